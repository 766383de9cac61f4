#include "hu/foelner.hpp"

#include <algorithm>
#include <cstdlib>

#include "hu/error.hpp"

namespace hu {

ZBox::ZBox(std::size_t rank, std::size_t radius)
    : rank_(rank), radius_(radius), size_(box_size(rank, radius)), stride_(rank) {
  long long s = 1;
  for (std::size_t i = rank; i-- > 0;) {
    stride_[i] = s;
    s *= static_cast<long long>(2 * radius + 1);
  }
}

bool ZBox::contains(std::span<const long long> p) const {
  if (p.size() != rank_) return false;
  const auto r = static_cast<long long>(radius_);
  return std::all_of(p.begin(), p.end(), [r](long long c) { return c >= -r && c <= r; });
}

std::size_t ZBox::index(std::span<const long long> p) const {
  if (!contains(p)) throw Error(Errc::WindowTooSmall, "point outside the tabulated box");
  long long idx = 0;
  for (std::size_t i = 0; i < rank_; ++i) idx += (p[i] + static_cast<long long>(radius_)) * stride_[i];
  return static_cast<std::size_t>(idx);
}

long long ZBox::offset(std::span<const long long> shift) const {
  long long off = 0;
  for (std::size_t i = 0; i < rank_; ++i) off += shift[i] * stride_[i];
  return off;
}

ZPoint ZBox::point(std::size_t index) const {
  ZPoint p(rank_);
  auto rem = static_cast<long long>(index);
  for (std::size_t i = 0; i < rank_; ++i) {
    p[i] = rem / stride_[i] - static_cast<long long>(radius_);
    rem %= stride_[i];
  }
  return p;
}

namespace {

ZPoint add(const ZPoint& a, const ZPoint& b) {
  ZPoint c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

double sup_over(const VectorTable& t, NormKind norm) {
  double s = 0.0;
  for (const DualVector& v : t) s = std::max(s, dual_norm(norm, v));
  return s;
}

}  // namespace

FoelnerReport stabilize_foelner_z(std::size_t radius, const ZTable& f, const ZTable& h, NormKind norm,
                                  std::optional<double> tolerance_factor) {
  const std::size_t rank = f.box.rank();
  const std::size_t shift_radius = h.box.radius();
  if (h.box.rank() != rank) throw Error(Errc::DimensionMismatch, "f and h have different ranks");
  if (f.values.size() != f.box.size() || h.values.size() != h.box.size()) {
    throw Error(Errc::DomainMismatch, "table does not cover its box");
  }
  if (shift_radius > radius) {
    throw Error(Errc::WindowTooSmall, "shift radius " + std::to_string(shift_radius) +
                                          " exceeds the box radius " + std::to_string(radius));
  }
  if (f.box.radius() < radius + shift_radius) {
    throw Error(Errc::WindowTooSmall, "f is tabulated to radius " + std::to_string(f.box.radius()) +
                                          ", need N + S = " + std::to_string(radius + shift_radius));
  }
  const std::size_t dim = f.values.front().dim();
  for (const auto* t : {&f.values, &h.values}) {
    for (const DualVector& v : *t) {
      if (v.dim() != dim) throw Error(Errc::DimensionMismatch, "table values differ in dimension");
      v.require_finite();
    }
  }

  const ZBox& window = f.box;
  const ZBox& shifts = h.box;
  const ZBox inner(rank, radius);
  const MeanHandle m = foelner_box_mean(rank, radius);

  FoelnerReport r;
  r.radius = radius;
  r.shift_radius = shift_radius;
  r.norm = norm;
  r.H.box = shifts;
  r.F.box = ZBox(rank, shift_radius);
  r.scale = 1.0 + std::max(sup_over(f.values, norm), sup_over(h.values, norm));
  r.tolerance = tolerance_factor.value_or(kDefaultToleranceFactor) * r.scale;

  // Window index of every point of the averaging box.
  std::vector<std::size_t> base(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) base[i] = window.index(inner.point(i));

  std::vector<ZPoint> shift_points(shifts.size());
  std::vector<long long> shift_offsets(shifts.size());
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    shift_points[s] = shifts.point(s);
    shift_offsets[s] = window.offset(shift_points[s]);
  }

  VectorTable integrand(inner.size());
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const auto moved = static_cast<std::size_t>(static_cast<long long>(base[i]) + shift_offsets[s]);
      integrand[i] = f.values[moved] - f.values[base[i]];
    }
    r.H.values.push_back(mean_vector(m, integrand));
  }

  for (std::size_t w = 0; w < window.size(); ++w) {
    const ZPoint x = window.point(w);
    for (std::size_t s = 0; s < shifts.size(); ++s) {
      const ZPoint xy = add(x, shift_points[s]);
      if (!window.contains(xy)) continue;
      const DualVector res = f.values[window.index(xy)] - f.values[w] - h.values[s];
      r.delta_min = std::max(r.delta_min, dual_norm(norm, res));
    }
  }
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    r.bound_H = std::max(r.bound_H, dual_norm(norm, r.H.values[s] - h.values[s]));
  }

  // Cocycle defects: H(y+z) - H(y) - H(z) is the z-shift defect of the box
  // mean applied to g_y(x) = f(x+y) - f(x) - h(y).
  r.worst_certificate_margin = 0.0;
  bool first_pair = true;
  std::vector<double> g_norm(window.size(), 0.0);
  for (std::size_t sy = 0; sy < shifts.size(); ++sy) {
    const ZPoint& y = shift_points[sy];
    for (std::size_t w = 0; w < window.size(); ++w) {
      const ZPoint xy = add(window.point(w), y);
      g_norm[w] = window.contains(xy)
                      ? dual_norm(norm, f.values[window.index(xy)] - f.values[w] - h.values[sy])
                      : 0.0;
    }
    for (std::size_t sz = 0; sz < shifts.size(); ++sz) {
      const ZPoint& z = shift_points[sz];
      const ZPoint yz = add(y, z);
      if (!shifts.contains(yz)) continue;
      const DualVector defect = r.H.values[shifts.index(yz)] - r.H.values[sy] - r.H.values[sz];
      const double measured = dual_norm(norm, defect);
      double integrand_sup = 0.0;
      for (std::size_t i = 0; i < inner.size(); ++i) {
        const auto moved = static_cast<std::size_t>(static_cast<long long>(base[i]) + shift_offsets[sz]);
        integrand_sup = std::max({integrand_sup, g_norm[base[i]], g_norm[moved]});
      }
      const double certified = 2.0 * integrand_sup * foelner_defect_bound(m, z);
      r.measured_cocycle_defect = std::max(r.measured_cocycle_defect, measured);
      r.certified_cocycle_bound = std::max(r.certified_cocycle_bound, certified);
      const double margin = certified - measured;
      r.worst_certificate_margin = first_pair ? margin : std::min(r.worst_certificate_margin, margin);
      first_pair = false;
      if (measured > certified + r.tolerance) r.defects_certified = false;
    }
  }

  // F_N over the shift window with the box mean of radius S on G.
  const ZBox& fbox = r.F.box;
  const MeanHandle n = foelner_box_mean(rank, shift_radius);
  VectorTable f_integrand(shifts.size());
  for (std::size_t xi = 0; xi < fbox.size(); ++xi) {
    const ZPoint x = fbox.point(xi);
    for (std::size_t s = 0; s < shifts.size(); ++s) {
      f_integrand[s] = f.at(add(x, shift_points[s])) - r.H.values[s];
    }
    r.F.values.push_back(mean_vector(n, f_integrand));
  }
  for (std::size_t xi = 0; xi < fbox.size(); ++xi) {
    const ZPoint x = fbox.point(xi);
    r.bound_F = std::max(r.bound_F, dual_norm(norm, r.F.values[xi] - f.at(x)));
    for (std::size_t s = 0; s < shifts.size(); ++s) {
      const ZPoint xy = add(x, shift_points[s]);
      if (!fbox.contains(xy)) continue;
      const DualVector res = r.F.values[fbox.index(xy)] - r.F.values[xi] - r.H.values[s];
      r.equivariance_residual = std::max(r.equivariance_residual, dual_norm(norm, res));
    }
  }

  r.certificate = certify(m, shift_points);
  return r;
}

LinearCocycle exactify_linear(const ZTable& H_N, const ZTable& h, NormKind norm) {
  const ZBox& shifts = H_N.box;
  if (shifts.radius() < 1) throw Error(Errc::WindowTooSmall, "H_N must be tabulated at the standard generators");
  if (h.box.rank() != shifts.rank() || h.box.radius() != shifts.radius()) {
    throw Error(Errc::DomainMismatch, "h and H_N are tabulated on different boxes");
  }
  LinearCocycle out{{}, ZTable{shifts, {}}, 0.0};
  const std::size_t rank = shifts.rank();
  for (std::size_t i = 0; i < rank; ++i) {
    ZPoint e(rank, 0);
    e[i] = 1;
    out.generators.push_back(H_N.at(e));
  }
  const std::size_t dim = out.generators.front().dim();
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    const ZPoint y = shifts.point(s);
    DualVector v(dim);
    for (std::size_t i = 0; i < rank; ++i) v += static_cast<double>(y[i]) * out.generators[i];
    out.bound_H = std::max(out.bound_H, dual_norm(norm, v - h.values[s]));
    out.H.values.push_back(std::move(v));
  }
  return out;
}

}  // namespace hu
