#include "hu/module.hpp"

#include <charconv>
#include <cmath>

#include "hu/error.hpp"

namespace hu {

NormKind dual_kind(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::one: return NormKind::sup;
    case NormKind::two: return NormKind::two;
    case NormKind::sup: return NormKind::one;
  }
  return NormKind::two;
}

std::string_view norm_name(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::one: return "one";
    case NormKind::two: return "two";
    case NormKind::sup: return "sup";
  }
  return "?";
}

NormKind parse_norm(std::string_view name) {
  if (name == "one") return NormKind::one;
  if (name == "two") return NormKind::two;
  if (name == "sup") return NormKind::sup;
  throw Error(Errc::UnknownSpec, "unknown norm '" + std::string(name) + "'");
}

DualVector& DualVector::operator+=(const DualVector& other) {
  if (other.dim() != dim()) throw Error(Errc::DimensionMismatch, "vector dimensions differ");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

DualVector& DualVector::operator-=(const DualVector& other) {
  if (other.dim() != dim()) throw Error(Errc::DimensionMismatch, "vector dimensions differ");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

DualVector& DualVector::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

void DualVector::require_finite() const {
  for (double c : coords_) {
    if (!std::isfinite(c)) throw Error(Errc::NonFinite, "vector entry is not finite");
  }
}

double pairing(const DualVector& alpha, std::span<const double> xi) {
  if (xi.size() != alpha.dim()) throw Error(Errc::DimensionMismatch, "pairing dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) s += alpha[i] * xi[i];
  return s;
}

double dual_norm(NormKind space_norm, const DualVector& alpha) {
  switch (dual_kind(space_norm)) {
    case NormKind::one: {
      double s = 0.0;
      for (double c : alpha.coords()) s += std::abs(c);
      return s;
    }
    case NormKind::sup: {
      double s = 0.0;
      for (double c : alpha.coords()) s = std::max(s, std::abs(c));
      return s;
    }
    case NormKind::two: {
      double scale = 0.0;
      for (double c : alpha.coords()) scale = std::max(scale, std::abs(c));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (double c : alpha.coords()) s += (c / scale) * (c / scale);
      return scale * std::sqrt(s);
    }
  }
  return 0.0;
}

Matrix Matrix::identity(std::size_t d) {
  Matrix m{d, std::vector<double>(d * d, 0.0)};
  for (std::size_t i = 0; i < d; ++i) m.entries[i * d + i] = 1.0;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t d = a.dim;
  Matrix c{d, std::vector<double>(d * d, 0.0)};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) c.entries[i * d + j] += aik * b.at(k, j);
    }
  }
  return c;
}

bool is_signed_permutation(const Matrix& m) {
  const std::size_t d = m.dim;
  std::vector<int> col_hits(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    int row_hits = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const double v = m.at(i, j);
      if (v == 0.0) continue;
      if (v != 1.0 && v != -1.0) return false;
      ++row_hits;
      ++col_hits[j];
    }
    if (row_hits != 1) return false;
  }
  for (int hits : col_hits) {
    if (hits != 1) return false;
  }
  return true;
}

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
  }
  return worst;
}

bool is_orthogonal(const Matrix& m, double tol) {
  const std::size_t d = m.dim;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += m.at(k, i) * m.at(k, j);
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

}  // namespace

DualModule DualModule::build(NormedSpace space, Group group, std::vector<Matrix> matrices) {
  const std::size_t d = space.dim;
  if (d == 0) throw Error(Errc::Parse, "module dimension must be positive");
  if (matrices.size() != group.order()) {
    throw Error(Errc::DomainMismatch, "expected " + std::to_string(group.order()) +
                                             " matrices, got " + std::to_string(matrices.size()));
  }
  bool all_signed = true;
  for (std::size_t y = 0; y < matrices.size(); ++y) {
    const Matrix& m = matrices[y];
    if (m.dim != d || m.entries.size() != d * d) {
      throw Error(Errc::DimensionMismatch, "matrix " + std::to_string(y) + " is not " +
                                               std::to_string(d) + "x" + std::to_string(d));
    }
    for (double v : m.entries) {
      if (!std::isfinite(v)) throw Error(Errc::NonFinite, "matrix " + std::to_string(y) + " has a non-finite entry");
    }
    const bool signed_perm = is_signed_permutation(m);
    all_signed = all_signed && signed_perm;
    const bool isometric = signed_perm || (space.norm == NormKind::two && is_orthogonal(m, kOrthogonalTolerance));
    if (!isometric) {
      throw Error(Errc::NotIsometric, "matrix " + std::to_string(y) + " is not an isometry of the " +
                                          std::string(norm_name(space.norm)) + " norm");
    }
  }
  if (!(matrices[0] == Matrix::identity(d))) {
    throw Error(Errc::IdentityNotIdentity, "matrix of the identity element is not I");
  }
  // Signed permutations compose exactly; orthogonal input is compared within tolerance.
  const double tol = all_signed ? 0.0 : kOrthogonalTolerance;
  for (Element y = 0; y < group.order(); ++y) {
    for (Element z = 0; z < group.order(); ++z) {
      const Matrix prod = matrices[y] * matrices[z];
      if (max_abs_diff(prod, matrices[group.mul(y, z)]) > tol) {
        throw Error(Errc::NotHomomorphism, "matrix(" + std::to_string(y) + "∘" + std::to_string(z) +
                                               ") != matrix(" + std::to_string(y) + ")·matrix(" +
                                               std::to_string(z) + ")");
      }
    }
  }
  DualModule mod;
  mod.space_ = space;
  mod.trivial_ = true;
  for (const Matrix& m : matrices) mod.trivial_ = mod.trivial_ && m == Matrix::identity(d);
  mod.group_ = std::move(group);
  mod.matrices_ = std::move(matrices);
  return mod;
}

DualModule DualModule::trivial(NormedSpace space, Group group) {
  std::vector<Matrix> ms(group.order(), Matrix::identity(space.dim));
  return build(space, std::move(group), std::move(ms));
}

DualVector DualModule::act_dual(const DualVector& alpha, Element y) const {
  const std::size_t d = dim();
  if (alpha.dim() != d) throw Error(Errc::DimensionMismatch, "vector has dimension " + std::to_string(alpha.dim()));
  if (trivial_) return alpha;
  const Matrix& m = matrices_[y];
  DualVector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += m.at(j, i) * alpha[j];
    out[i] = s;
  }
  return out;
}

double DualModule::dual_norm(const DualVector& alpha) const {
  if (alpha.dim() != dim()) throw Error(Errc::DimensionMismatch, "vector has dimension " + std::to_string(alpha.dim()));
  return hu::dual_norm(space_.norm, alpha);
}

namespace {

std::vector<int> require_sign(const Group& g) {
  std::vector<int> chi = sign_character(g);
  if (chi.empty()) throw Error(Errc::InconsistentSpec, "group has no sign character");
  return chi;
}

}  // namespace

DualModule sign_module(NormedSpace space, const Group& g) {
  const std::vector<int> chi = require_sign(g);
  std::vector<Matrix> ms;
  for (Element y = 0; y < g.order(); ++y) {
    Matrix m = Matrix::identity(space.dim);
    for (double& v : m.entries) v *= chi[y];
    ms.push_back(std::move(m));
  }
  return DualModule::build(space, g, std::move(ms));
}

DualModule swap_module(NormedSpace space, const Group& g) {
  if (space.dim % 2 != 0) throw Error(Errc::InconsistentSpec, "swap module needs an even dimension");
  const std::vector<int> chi = require_sign(g);
  const std::size_t d = space.dim;
  std::vector<Matrix> ms;
  for (Element y = 0; y < g.order(); ++y) {
    Matrix m = Matrix::identity(d);
    if (chi[y] < 0) {
      m.entries.assign(d * d, 0.0);
      for (std::size_t i = 0; i < d; i += 2) {
        m.entries[i * d + i + 1] = 1.0;
        m.entries[(i + 1) * d + i] = 1.0;
      }
    }
    ms.push_back(std::move(m));
  }
  return DualModule::build(space, g, std::move(ms));
}

DualModule permutation_module(NormedSpace space, const GAction& action, bool twist_by_sign) {
  if (action.size() != space.dim) {
    throw Error(Errc::DimensionMismatch, "permutation module needs |X| = d");
  }
  const Group& g = action.group();
  std::vector<int> chi(g.order(), 1);
  if (twist_by_sign) chi = require_sign(g);
  const std::size_t d = space.dim;
  std::vector<Matrix> ms;
  for (Element y = 0; y < g.order(); ++y) {
    // y·e_x = e_{x·y⁻¹} turns the right action on points into a left action on E.
    Matrix m{d, std::vector<double>(d * d, 0.0)};
    for (Point x = 0; x < d; ++x) m.entries[action.act(x, g.inv(y)) * d + x] = chi[y];
    ms.push_back(std::move(m));
  }
  return DualModule::build(space, g, std::move(ms));
}

std::optional<GAction> find_transitive_action(const Group& g, std::size_t d) {
  const std::size_t n = g.order();
  if (d == 0 || n % d != 0) return std::nullopt;
  if (d == 1) return trivial_action(g, 1);
  if (d == n) return right_action_self(g);
  for (Element a = 0; a < n; ++a) {
    if (g.closure({a}).size() * d == n) return coset_space(g, {a}).action();
  }
  for (Element a = 1; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      if (g.closure({a, b}).size() * d == n) return coset_space(g, {a, b}).action();
    }
  }
  return std::nullopt;
}

namespace {

std::size_t parse_dim(std::string_view text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw Error(Errc::UnknownSpec, "bad module dimension '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

DualModule builtin_module(std::string_view spec, const Group& g) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  NormedSpace space;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(Errc::UnknownSpec, "module option '" + std::string(item) + "' lacks '='");
      const auto key = item.substr(0, eq);
      const auto value = item.substr(eq + 1);
      if (key == "d") {
        space.dim = parse_dim(value);
      } else if (key == "norm") {
        space.norm = parse_norm(value);
      } else {
        throw Error(Errc::UnknownSpec, "unknown module option '" + std::string(key) + "'");
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (kind == "trivial") return DualModule::trivial(space, g);
  if (kind == "sign") return sign_module(space, g);
  if (kind == "swap") return swap_module(space, g);
  if (kind == "perm" || kind == "signperm") {
    auto action = find_transitive_action(g, space.dim);
    if (!action) {
      throw Error(Errc::InconsistentSpec, "group of order " + std::to_string(g.order()) +
                                              " has no transitive action on " +
                                              std::to_string(space.dim) + " points");
    }
    return permutation_module(space, *action, kind == "signperm");
  }
  throw Error(Errc::UnknownSpec, "unknown module kind '" + std::string(kind) + "'");
}

}  // namespace hu
