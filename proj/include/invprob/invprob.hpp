#pragma once

#include "invprob/action.hpp"
#include "invprob/error.hpp"
#include "invprob/group.hpp"
#include "invprob/haar.hpp"
#include "invprob/probability_table.hpp"
#include "invprob/quantum.hpp"
#include "invprob/rational.hpp"
