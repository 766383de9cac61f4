#include "hu/means.hpp"

#include <charconv>
#include <cstdlib>

#include "hu/error.hpp"
#include "hu/summation.hpp"

namespace hu {

std::size_t box_size(std::size_t rank, std::size_t radius) {
  if (rank == 0) throw Error(Errc::UnknownSpec, "box rank must be positive");
  const std::size_t side = 2 * radius + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    if (total > 100'000'000 / side) throw Error(Errc::SizeLimitExceeded, "box [-N,N]^r exceeds 1e8 points");
    total *= side;
  }
  return total;
}

std::string MeanHandle::describe() const {
  switch (kind_) {
    case MeanKind::uniform_finite: return "uniform";
    case MeanKind::pullback: return "pullback:x0=" + std::to_string(base_point_);
    case MeanKind::foelner_box:
      return "foelner:r=" + std::to_string(rank_) + ",N=" + std::to_string(radius_);
  }
  return "?";
}

MeanHandle uniform_mean(const Group& g) {
  MeanHandle m;
  m.kind_ = MeanKind::uniform_finite;
  m.side_ = Side::two_sided;
  m.domain_size_ = g.order();
  m.group_order_ = g.order();
  return m;
}

MeanHandle uniform_mean(const GAction& action) {
  MeanHandle m;
  m.kind_ = MeanKind::uniform_finite;
  m.side_ = Side::right_invariant;
  m.domain_size_ = action.size();
  m.group_order_ = action.group().order();
  return m;
}

MeanHandle pullback_mean(const GAction& action, Point x0) {
  if (x0 >= action.size()) throw Error(Errc::DomainMismatch, "base point " + std::to_string(x0) + " out of range");
  MeanHandle m;
  m.kind_ = MeanKind::pullback;
  m.side_ = Side::right_invariant;
  m.domain_size_ = action.size();
  m.group_order_ = action.group().order();
  m.base_point_ = x0;
  m.samples_.reserve(m.group_order_);
  for (Element y = 0; y < m.group_order_; ++y) m.samples_.push_back(action.act(x0, y));
  m.orbit_is_proper_ = orbit(action, x0).size() < action.size();
  return m;
}

MeanHandle foelner_box_mean(std::size_t rank, std::size_t radius) {
  MeanHandle m;
  m.kind_ = MeanKind::foelner_box;
  m.side_ = Side::two_sided;
  m.domain_size_ = box_size(rank, radius);
  m.rank_ = rank;
  m.radius_ = radius;
  return m;
}

double mean_scalar(const MeanHandle& m, std::span<const double> phi) {
  if (phi.size() != m.domain_size_) {
    throw Error(Errc::DomainMismatch, "function has " + std::to_string(phi.size()) +
                                          " values, mean domain has " + std::to_string(m.domain_size_));
  }
  CompensatedSum sum;
  if (m.kind_ == MeanKind::pullback) {
    for (Point x : m.samples_) sum.add(phi[x]);
    return sum.value() / static_cast<double>(m.samples_.size());
  }
  for (double v : phi) sum.add(v);
  return sum.value() / static_cast<double>(phi.size());
}

DualVector mean_vector(const MeanHandle& m, std::span<const DualVector> f) {
  if (f.size() != m.domain_size()) {
    throw Error(Errc::DomainMismatch, "function has " + std::to_string(f.size()) +
                                          " values, mean domain has " + std::to_string(m.domain_size()));
  }
  const std::size_t d = f.front().dim();
  for (const DualVector& v : f) {
    if (v.dim() != d) throw Error(Errc::DimensionMismatch, "function values differ in dimension");
  }
  DualVector out(d);
  std::vector<double> column(f.size());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t x = 0; x < f.size(); ++x) column[x] = f[x][i];
    out[i] = mean_scalar(m, column);
  }
  return out;
}

double foelner_defect_bound(const MeanHandle& m, std::span<const long long> shift) {
  if (m.kind() != MeanKind::foelner_box) throw Error(Errc::KindMismatch, "defect bound needs a foelner box mean");
  if (shift.size() != m.rank()) throw Error(Errc::DimensionMismatch, "shift rank differs from box rank");
  const double side = 2.0 * static_cast<double>(m.radius()) + 1.0;
  double kept = 1.0;
  for (long long s : shift) {
    kept *= std::max(0.0, side - 2.0 * static_cast<double>(std::llabs(s))) / side;
  }
  return 1.0 - kept;
}

double module_equivariance_check(const MeanHandle& m, const DualModule& module,
                                 std::span<const DualVector> f) {
  if (m.kind() == MeanKind::foelner_box || m.group_order() != module.group().order()) {
    throw Error(Errc::DomainMismatch, "mean is not over the module's group");
  }
  const DualVector base = mean_vector(m, f);
  std::vector<DualVector> moved(f.size());
  double worst = 0.0;
  for (Element y = 0; y < module.group().order(); ++y) {
    for (std::size_t x = 0; x < f.size(); ++x) moved[x] = module.act_dual(f[x], y);
    worst = std::max(worst, module.dual_norm(mean_vector(m, moved) - module.act_dual(base, y)));
  }
  return worst;
}

MeanCertificate certify(const MeanHandle& m, const std::vector<std::vector<long long>>& shifts) {
  MeanCertificate cert;
  const std::vector<double> ones(m.domain_size(), 1.0);
  cert.normalization_residual = std::abs(mean_scalar(m, ones) - 1.0);
  if (m.exact()) {
    cert.invariance_defects.assign(m.group_order(), 0.0);
  } else {
    for (const auto& s : shifts) cert.invariance_defects.push_back(foelner_defect_bound(m, s));
  }
  return cert;
}

namespace {

std::size_t parse_count(std::string_view text, std::string_view spec) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::UnknownSpec, "bad number in mean spec '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

MeanSpec MeanSpec::parse(std::string_view text) {
  MeanSpec spec;
  if (text == "uniform") return spec;
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  bool have_x0 = false;
  bool have_radius = false;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::UnknownSpec, "bad mean option in '" + std::string(text) + "'");
    const auto key = item.substr(0, eq);
    const std::size_t value = parse_count(item.substr(eq + 1), text);
    if (kind == "pullback" && key == "x0") {
      spec.x0 = value;
      have_x0 = true;
    } else if (kind == "foelner" && key == "r") {
      spec.rank = value;
    } else if (kind == "foelner" && key == "N") {
      spec.radius = value;
      have_radius = true;
    } else {
      throw Error(Errc::UnknownSpec, "unknown mean option in '" + std::string(text) + "'");
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (kind == "pullback") {
    if (!have_x0) throw Error(Errc::UnknownSpec, "pullback mean needs x0");
    spec.kind = MeanKind::pullback;
    return spec;
  }
  if (kind == "foelner") {
    if (!have_radius || spec.rank == 0) throw Error(Errc::UnknownSpec, "foelner mean needs r >= 1 and N");
    spec.kind = MeanKind::foelner_box;
    return spec;
  }
  throw Error(Errc::UnknownSpec, "unknown mean spec '" + std::string(text) + "'");
}

std::string MeanSpec::str() const {
  switch (kind) {
    case MeanKind::uniform_finite: return "uniform";
    case MeanKind::pullback: return "pullback:x0=" + std::to_string(x0);
    case MeanKind::foelner_box: return "foelner:r=" + std::to_string(rank) + ",N=" + std::to_string(radius);
  }
  return "?";
}

}  // namespace hu
