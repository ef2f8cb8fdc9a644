#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invprob/error.hpp"

namespace invprob {

using ElementId = std::uint32_t;
using CayleyTable = std::vector<std::vector<ElementId>>;

/// A finite group given by its full composition table. Row `a`, column `b`
/// holds `a ∘ b` (apply `b` first, then `a`). Immutable once built.
class FiniteGroup {
 public:
  /// Largest order for which the constructor checks associativity exhaustively.
  static constexpr std::size_t kAssociativityCheckLimit = 48;

  FiniteGroup(std::string label, CayleyTable table, std::vector<std::string> element_names = {})
      : label_(std::move(label)), table_(std::move(table)), names_(std::move(element_names)) {
    const std::size_t n = table_.size();
    if (n == 0) throw Error(ErrorKind::InvalidOrder, "group '" + label_ + "' has no elements");
    for (const auto& row : table_) {
      if (row.size() != n) throw Error(ErrorKind::InvalidGroup, "table of '" + label_ + "' is not square");
      for (ElementId x : row)
        if (x >= n) throw Error(ErrorKind::InvalidGroup, "table of '" + label_ + "' is not closed");
    }
    if (!names_.empty() && names_.size() != n)
      throw Error(ErrorKind::InvalidGroup, "element name count does not match order");

    std::optional<ElementId> identity;
    for (ElementId e = 0; e < n && !identity; ++e) {
      bool ok = true;
      for (ElementId x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
      if (ok) identity = e;
    }
    if (!identity) throw Error(ErrorKind::InvalidGroup, "'" + label_ + "' has no identity");
    identity_ = *identity;

    inverse_.assign(n, 0);
    for (ElementId x = 0; x < n; ++x) {
      std::optional<ElementId> inv;
      for (ElementId y = 0; y < n && !inv; ++y)
        if (table_[x][y] == identity_ && table_[y][x] == identity_) inv = y;
      if (!inv) throw Error(ErrorKind::InvalidGroup, "element " + std::to_string(x) + " of '" + label_ + "' has no inverse");
      inverse_[x] = *inv;
    }

    if (n <= kAssociativityCheckLimit) {
      for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b)
          for (ElementId c = 0; c < n; ++c)
            if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
              throw Error(ErrorKind::InvalidGroup, "'" + label_ + "' is not associative");
    }
  }

  const std::string& label() const noexcept { return label_; }
  std::size_t order() const noexcept { return table_.size(); }
  ElementId identity() const noexcept { return identity_; }
  ElementId compose(ElementId a, ElementId b) const { return table_.at(a).at(b); }
  ElementId inverse(ElementId a) const { return inverse_.at(a); }
  const CayleyTable& table() const noexcept { return table_; }

  std::string element_name(ElementId a) const {
    return names_.empty() ? std::to_string(a) : names_.at(a);
  }

  /// Smallest k >= 1 with a^k = identity.
  std::size_t element_order(ElementId a) const {
    std::size_t k = 1;
    for (ElementId x = a; x != identity_; x = compose(a, x)) ++k;
    return k;
  }

  friend bool operator==(const FiniteGroup& lhs, const FiniteGroup& rhs) {
    return lhs.label_ == rhs.label_ && lhs.table_ == rhs.table_;
  }

 private:
  std::string label_;
  CayleyTable table_;
  std::vector<std::string> names_;
  ElementId identity_ = 0;
  std::vector<ElementId> inverse_;
};

inline FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidOrder, "cyclic group needs n >= 1");
  CayleyTable table(n, std::vector<ElementId>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = static_cast<ElementId>((i + j) % n);
  return FiniteGroup("C" + std::to_string(n), std::move(table));
}

/// Dihedral group of order 2k. Element s*k + i is the map x -> (-1)^s x + i on Z_k:
/// ids 0..k-1 are rotations r^i, ids k..2k-1 are reflections.
inline FiniteGroup make_dihedral(std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidOrder, "dihedral group needs k >= 1");
  const std::size_t n = 2 * k;
  CayleyTable table(n, std::vector<ElementId>(n));
  std::vector<std::string> names(n);
  for (std::size_t g = 0; g < n; ++g) {
    const std::size_t sg = g / k, ig = g % k;
    names[g] = (sg ? "f" : "r") + std::to_string(ig);
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t sh = h / k, ih = h % k;
      // g(h(x)) = sg*sh x + sg*ih + ig
      const std::size_t shift = ((sg ? k - ih : ih) + ig) % k;
      table[g][h] = static_cast<ElementId>(((sg ^ sh) * k) + shift);
    }
  }
  return FiniteGroup("D" + std::to_string(k), std::move(table), std::move(names));
}

/// Rotations of a coin about an axis in its plane: 360 degrees (identity) and 180 degrees (flip).
inline FiniteGroup make_coin_group() {
  return FiniteGroup("coin", CayleyTable{{0, 1}, {1, 0}}, {"rot360", "rot180"});
}

/// Componentwise product; element (i, j) has id i*|h| + j.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order();
  const std::size_t n = g.order() * m;
  CayleyTable table(n, std::vector<ElementId>(n));
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    names[a] = "(" + g.element_name(static_cast<ElementId>(a / m)) + "," + h.element_name(static_cast<ElementId>(a % m)) + ")";
    for (std::size_t b = 0; b < n; ++b) {
      const ElementId gi = g.compose(static_cast<ElementId>(a / m), static_cast<ElementId>(b / m));
      const ElementId hi = h.compose(static_cast<ElementId>(a % m), static_cast<ElementId>(b % m));
      table[a][b] = static_cast<ElementId>(gi * m + hi);
    }
  }
  return FiniteGroup(g.label() + "x" + h.label(), std::move(table), std::move(names));
}

// Line-oriented text form:
//   group <label>
//   order <n>
//   <n rows of n space-separated ids>

inline std::string to_text(const FiniteGroup& g) {
  std::ostringstream out;
  out << "group " << g.label() << "\n" << "order " << g.order() << "\n";
  for (const auto& row : g.table()) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
  return out.str();
}

inline FiniteGroup parse_group_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "unexpected end of group text after line " + std::to_string(line_no));
    ++line_no;
  };
  next_line();
  if (line.rfind("group ", 0) != 0) throw Error(ErrorKind::Parse, "line 1: expected 'group <label>'");
  std::string label = line.substr(6);
  next_line();
  std::size_t n = 0;
  if (std::istringstream header(line); !(header >> line >> n) || line != "order")
    throw Error(ErrorKind::Parse, "line 2: expected 'order <n>'");
  CayleyTable table(n);
  for (std::size_t i = 0; i < n; ++i) {
    next_line();
    std::istringstream row(line);
    ElementId x;
    while (row >> x) table[i].push_back(x);
    if (table[i].size() != n)
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " + std::to_string(n) + " entries");
  }
  return FiniteGroup(std::move(label), std::move(table));
}

}  // namespace invprob
