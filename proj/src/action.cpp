#include "hu/action.hpp"

#include <algorithm>

#include "hu/error.hpp"

namespace hu {

GAction GAction::from_table(Group group, const Table& act) {
  const std::size_t n = group.order();
  const std::size_t m = act.size();
  if (m == 0) throw Error(Errc::Parse, "action on an empty set");
  if (m > kMaxPoints) {
    throw Error(Errc::SizeLimitExceeded, "|X| = " + std::to_string(m) + " > " + std::to_string(kMaxPoints));
  }
  GAction a;
  a.size_ = m;
  a.act_.resize(m * n);
  for (Point x = 0; x < m; ++x) {
    if (act[x].size() != n) {
      throw Error(Errc::Parse, "action row " + std::to_string(x) + " has " +
                                   std::to_string(act[x].size()) + " entries, expected |G| = " +
                                   std::to_string(n));
    }
    for (Element y = 0; y < n; ++y) {
      if (act[x][y] >= m) {
        throw Error(Errc::Parse, "act[" + std::to_string(x) + "][" + std::to_string(y) + "] out of range");
      }
      a.act_[x * n + y] = act[x][y];
    }
  }
  for (Point x = 0; x < m; ++x) {
    if (act[x][0] != x) {
      throw Error(Errc::NotAnAction, "point " + std::to_string(x) + "·e = " + std::to_string(act[x][0]));
    }
    for (Element y = 0; y < n; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (act[act[x][y]][z] != act[x][group.mul(y, z)]) {
          throw Error(Errc::NotAnAction, "(x·y)·z != x·(yz) at x=" + std::to_string(x) +
                                             ", y=" + std::to_string(y) + ", z=" + std::to_string(z));
        }
      }
    }
  }
  a.group_ = std::move(group);
  return a;
}

GAction::Table GAction::table() const {
  Table t(size_, std::vector<Point>(group_.order()));
  for (Point x = 0; x < size_; ++x) {
    for (Element y = 0; y < group_.order(); ++y) t[x][y] = act(x, y);
  }
  return t;
}

bool GAction::is_transitive() const { return orbit(*this, 0).size() == size_; }

GAction right_action_self(const Group& g) {
  GAction a;
  a.group_ = g;
  a.size_ = g.order();
  a.act_.resize(g.order() * g.order());
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y = 0; y < g.order(); ++y) a.act_[x * g.order() + y] = g.mul(x, y);
  }
  return a;
}

GAction trivial_action(const Group& g, std::size_t points) {
  if (points == 0) throw Error(Errc::Parse, "action on an empty set");
  if (points > kMaxPoints) throw Error(Errc::SizeLimitExceeded, "|X| > " + std::to_string(kMaxPoints));
  GAction a;
  a.group_ = g;
  a.size_ = points;
  a.act_.resize(points * g.order());
  for (Point x = 0; x < points; ++x) {
    std::fill_n(a.act_.begin() + static_cast<std::ptrdiff_t>(x * g.order()), g.order(), x);
  }
  return a;
}

GAction disjoint_union(const GAction& a, const GAction& b) {
  if (!(a.group() == b.group())) throw Error(Errc::DomainMismatch, "disjoint union over different groups");
  GAction::Table t = a.table();
  for (auto row : b.table()) {
    for (auto& p : row) p += a.size();
    t.push_back(std::move(row));
  }
  return GAction::from_table(a.group(), t);
}

std::vector<Point> orbit(const GAction& action, Point x0) {
  if (x0 >= action.size()) throw Error(Errc::DomainMismatch, "base point out of range");
  std::vector<Point> points;
  points.reserve(action.group().order());
  for (Element y = 0; y < action.group().order(); ++y) points.push_back(action.act(x0, y));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

CosetSpace coset_space(const Group& g, const std::vector<Element>& generators) {
  const std::vector<Element> sub = g.closure(generators);
  const std::size_t n = g.order();
  constexpr Point unassigned = static_cast<Point>(-1);
  std::vector<Point> coset_of(n, unassigned);
  std::vector<Element> reps;
  for (Element y = 0; y < n; ++y) {
    if (coset_of[y] != unassigned) continue;
    const Point c = reps.size();
    reps.push_back(y);
    for (Element l : sub) coset_of[g.mul(l, y)] = c;
  }
  GAction::Table act(reps.size(), std::vector<Point>(n));
  for (Point c = 0; c < reps.size(); ++c) {
    for (Element y = 0; y < n; ++y) act[c][y] = coset_of[g.mul(reps[c], y)];
  }
  CosetSpace space(GAction::from_table(g, act));
  space.subgroup_ = sub;
  space.reps_ = std::move(reps);
  space.coset_of_ = std::move(coset_of);
  return space;
}

}  // namespace hu
