#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hu/foelner.hpp"
#include "hu/stabilizer.hpp"

namespace hu {

enum class ActionKind { self, coset, trivial };
enum class NoiseKind { uniform_box, boundary_extremal, none };

std::string_view action_kind_name(ActionKind kind) noexcept;
std::string_view noise_kind_name(NoiseKind kind) noexcept;
NoiseKind parse_noise_kind(std::string_view name);

struct ActionSpec {
  ActionKind kind = ActionKind::self;
  std::vector<Element> generators;  // coset only
  std::size_t trivial_points = 3;   // trivial only

  /// "self", "trivial", "trivial:5" (five fixed points) or "coset:2,3" (the
  /// cosets of the subgroup generated by elements 2 and 3).
  static ActionSpec parse(std::string_view text);
  std::string str() const;
  GAction build(const Group& g) const;
};

struct GenSpec {
  std::uint64_t seed = 0;
  std::string group_spec = "cyclic:2";
  ActionSpec action;
  std::string module_spec = "trivial:d=1,norm=sup";
  double delta = 0.1;
  NoiseKind noise_kind = NoiseKind::uniform_box;
  MeanSpec mean_m;  // used by run_suite

  std::string describe() const;
};

/// An exact solution (F0, H0) and the noise that was added to it.
struct GroundTruth {
  VectorTable H0;
  VectorTable F0;
  VectorTable u;  // f = F0 + u
  VectorTable v;  // h = H0 + v
};

struct GeneratedInstance {
  InstanceData instance;
  GroundTruth truth;
};

/// H0(y) = ξ·y - ξ, F0 propagated from ξF (self action) or constant (coset
/// and trivial actions), noise in the dual-norm ball of radius δ/3. Exact
/// parts use dyadic coordinates k/1024 so cocycle and equivariance identities
/// hold bit-exactly under signed-permutation modules. Throws InconsistentSpec
/// for a nontrivial module on a coset space of a subgroup L ≠ G, and
/// std::logic_error if the generated pair violates check_hypothesis ≤ δ.
GeneratedInstance gen_instance(const GenSpec& spec);

struct SuiteEntry {
  std::string spec;
  double delta = 0.0;
  double delta_min = 0.0;
  Verification measured;
  double scale = 1.0;
  double tolerance = 0.0;
  Guarantees guarantees;
  bool hypothesis_ok = false;         // delta_min ≤ delta
  std::optional<double> recovery;     // ‖H - H0‖∞, trivial modules only
  bool recovery_ok = true;            // recovery ≤ δ + δ/3 + tol
  std::string error;                  // non-empty when the instance threw
  bool passed = false;
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double worst_margin_H = 0.0;  // min over instances of delta_min - bound_H
  double worst_margin_F = 0.0;  // min over instances of 2·delta_min - bound_F
  double max_bound_H_ratio = 0.0;  // max over instances with delta_min > 0 of bound_H / delta_min
};

/// Instances run in parallel on up to `threads` workers (0 reads HU_THREADS,
/// defaulting to the hardware concurrency). Aggregation is order-independent,
/// so the report is identical for any thread count.
SuiteReport run_suite(const std::vector<GenSpec>& specs, unsigned threads = 0);

/// The main corpus: cyclic 2..12, dihedral 3..6, symmetric 3..4 and several
/// products, d ∈ {1, 2, 4}, every module kind the group supports, all three
/// norms, δ ∈ [0.01, 1], both noise kinds and the three action kinds.
std::vector<GenSpec> default_suite(std::size_t count, std::uint64_t seed);

/// S3 acting on the cosets of ⟨(12)⟩ (element 2 in the builtin ordering),
/// trivial module.
std::vector<GenSpec> coset_suite(std::size_t count, std::uint64_t seed);

struct SweepRow {
  std::size_t radius = 0;
  double measured_cocycle_defect = 0.0;
  double certified_bound = 0.0;
  double bound_H = 0.0;
  double bound_F = 0.0;
  bool certified = true;  // every pair's measured defect within its certificate
};

/// f(x) = slope·Σxᵢ + η(x) with η(x) = ±amplitude drawn per lattice point from
/// the seed (so η is one fixed function for every radius), h(y) = slope·Σyᵢ,
/// shifts |y|∞ ≤ shift_radius. Radii must be ascending.
std::vector<SweepRow> foelner_sweep(std::size_t rank, const std::vector<std::size_t>& radii, double slope,
                                    double amplitude, std::uint64_t seed, std::size_t shift_radius = 3);

/// Header "N,measured_cocycle_defect,certified_bound,bound_H,bound_F", one row
/// per radius, floats at 17 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// The sampled Z^r data used by foelner_sweep at one radius.
std::pair<ZTable, ZTable> foelner_data(std::size_t rank, std::size_t radius, double slope, double amplitude,
                                       std::uint64_t seed, std::size_t shift_radius);

}  // namespace hu
