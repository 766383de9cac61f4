#include "hu/group.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "hu/error.hpp"

namespace hu {

namespace {

std::string pair_str(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

std::size_t parse_size(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::UnknownSpec, "bad size in group spec '" + std::string(spec) + "'");
  }
  return value;
}

void check_order(std::size_t n, std::string_view what) {
  if (n == 0) throw Error(Errc::UnknownSpec, std::string(what) + " needs a positive size");
  if (n > kMaxGroupOrder) {
    throw Error(Errc::SizeLimitExceeded, std::string(what) + " has order " + std::to_string(n) +
                                             " > " + std::to_string(kMaxGroupOrder));
  }
}

}  // namespace

Group Group::from_table(const Table& table, std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(Errc::Parse, "empty multiplication table");
  if (n > kMaxGroupOrder) {
    throw Error(Errc::SizeLimitExceeded,
                "order " + std::to_string(n) + " > " + std::to_string(kMaxGroupOrder));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      throw Error(Errc::Parse, "row " + std::to_string(i) + " has " +
                                   std::to_string(table[i].size()) + " entries, expected " +
                                   std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) {
        throw Error(Errc::Parse, "entry " + pair_str(i, j) + " out of range");
      }
    }
  }
  if (!names.empty() && names.size() != n) {
    throw Error(Errc::Parse, "expected " + std::to_string(n) + " names");
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (table[0][j] != j) throw Error(Errc::NoIdentityAtZero, "0∘" + std::to_string(j) + " != " + std::to_string(j));
    if (table[j][0] != j) throw Error(Errc::NoIdentityAtZero, std::to_string(j) + "∘0 != " + std::to_string(j));
  }

  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[table[i][j]]++) {
        throw Error(Errc::NotInvertible, "row " + std::to_string(i) + " is not a permutation (value " +
                                             std::to_string(table[i][j]) + " repeats)");
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[table[i][j]]++) {
        throw Error(Errc::NotInvertible, "column " + std::to_string(j) +
                                             " is not a permutation (value " +
                                             std::to_string(table[i][j]) + " repeats)");
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t ij = table[i][j];
      for (std::size_t k = 0; k < n; ++k) {
        if (table[ij][k] != table[i][table[j][k]]) {
          throw Error(Errc::NotAssociative, "(" + std::to_string(i) + "∘" + std::to_string(j) +
                                                ")∘" + std::to_string(k) + " != " +
                                                std::to_string(i) + "∘(" + std::to_string(j) +
                                                "∘" + std::to_string(k) + ")");
        }
      }
    }
  }

  Group g;
  g.order_ = n;
  g.table_.resize(n * n);
  g.inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g.table_[i * n + j] = table[i][j];
      if (table[i][j] == 0) g.inverse_[i] = j;
    }
  }
  if (names.empty()) {
    names.resize(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  }
  g.names_ = std::move(names);
  return g;
}

Group::Table Group::table() const {
  Table t(order_, std::vector<Element>(order_));
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = 0; j < order_; ++j) t[i][j] = mul(i, j);
  }
  return t;
}

std::vector<Element> Group::closure(const std::vector<Element>& generators) const {
  std::vector<char> in(order_, 0);
  std::vector<Element> members{0};
  in[0] = 1;
  for (Element g : generators) {
    if (g >= order_) throw Error(Errc::DomainMismatch, "generator " + std::to_string(g) + " out of range");
  }
  // Finite group: closing under multiplication by generators yields the subgroup.
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Element g : generators) {
      const Element next = mul(members[head], g);
      if (!in[next]) {
        in[next] = 1;
        members.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

Group cyclic(std::size_t n) {
  check_order(n, "cyclic group");
  Group::Table t(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return Group::from_table(t);
}

Group dihedral(std::size_t n) {
  if (n == 0) throw Error(Errc::UnknownSpec, "dihedral group needs n >= 1");
  check_order(2 * n, "dihedral group");
  const std::size_t order = 2 * n;
  Group::Table t(order, std::vector<Element>(order));
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    const bool xs = x >= n;
    const std::size_t a = x % n;
    names[x] = (xs ? "sr" : "r") + std::to_string(a);
    for (std::size_t y = 0; y < order; ++y) {
      const bool ys = y >= n;
      const std::size_t b = y % n;
      if (!xs && !ys) t[x][y] = (a + b) % n;
      if (!xs && ys) t[x][y] = n + (b + n - a) % n;
      if (xs && !ys) t[x][y] = n + (a + b) % n;
      if (xs && ys) t[x][y] = (b + n - a) % n;
    }
  }
  return Group::from_table(t, std::move(names));
}

Group symmetric(std::size_t n) {
  if (n == 0 || n > 5) throw Error(Errc::SizeLimitExceeded, "symmetric group supports 1 <= n <= 5");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  const std::size_t order = perms.size();
  Group::Table t(order, std::vector<Element>(order));
  std::vector<std::string> names(order);
  std::vector<std::size_t> composed(n);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t k = 0; k < n; ++k) names[i] += static_cast<char>('0' + perms[i][k]);
    for (std::size_t j = 0; j < order; ++j) {
      // first perms[i], then perms[j]
      for (std::size_t k = 0; k < n; ++k) composed[k] = perms[j][perms[i][k]];
      const auto it = std::lower_bound(perms.begin(), perms.end(), composed);
      t[i][j] = static_cast<Element>(it - perms.begin());
    }
  }
  return Group::from_table(t, std::move(names));
}

Group direct_product(const Group& a, const Group& b) {
  check_order(a.order() * b.order(), "direct product");
  const std::size_t nb = b.order();
  const std::size_t order = a.order() * nb;
  Group::Table t(order, std::vector<Element>(order));
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    names[x] = "(" + a.name(x / nb) + "," + b.name(x % nb) + ")";
    for (std::size_t y = 0; y < order; ++y) {
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
  }
  return Group::from_table(t, std::move(names));
}

namespace {

Group parse_simple(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(Errc::UnknownSpec, "group spec '" + std::string(spec) + "' lacks ':'");
  }
  const auto kind = spec.substr(0, colon);
  const auto arg = spec.substr(colon + 1);
  if (kind == "cyclic") return cyclic(parse_size(arg, spec));
  if (kind == "dihedral") return dihedral(parse_size(arg, spec));
  if (kind == "symmetric") return symmetric(parse_size(arg, spec));
  throw Error(Errc::UnknownSpec, "unknown group kind '" + std::string(kind) + "'");
}

}  // namespace

Group builtin_group(std::string_view spec) {
  constexpr std::string_view product_prefix = "product:";
  if (spec.substr(0, product_prefix.size()) != product_prefix) return parse_simple(spec);

  std::string_view rest = spec.substr(product_prefix.size());
  std::vector<Group> factors;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    factors.push_back(parse_simple(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (factors.size() < 2) {
    throw Error(Errc::UnknownSpec, "product spec needs at least two factors");
  }
  Group result = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) result = direct_product(result, factors[i]);
  return result;
}

bool is_builtin_group_spec(std::string_view spec) {
  for (std::string_view kind : {"cyclic:", "dihedral:", "symmetric:", "product:"}) {
    if (spec.substr(0, kind.size()) == kind) return true;
  }
  return false;
}

std::vector<int> sign_character(const Group& g) {
  const std::size_t n = g.order();
  if (n % 2 != 0) return {};
  std::vector<Element> squares;
  for (Element x = 0; x < n; ++x) squares.push_back(g.mul(x, x));
  std::vector<Element> kernel = g.closure(squares);
  if (kernel.size() == n) return {};

  while (2 * kernel.size() < n) {
    std::vector<char> in(n, 0);
    for (Element k : kernel) in[k] = 1;
    Element extra = 0;
    while (in[extra]) ++extra;
    std::vector<Element> gens = kernel;
    gens.push_back(extra);
    kernel = g.closure(gens);
  }
  std::vector<int> chi(n, -1);
  for (Element k : kernel) chi[k] = 1;
  return chi;
}

}  // namespace hu
