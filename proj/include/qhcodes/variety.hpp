#pragma once

// The hypersurface B of PG(r, q^2) with affine equation
//
//   x_r^q - x_r + alpha^q (x_1^{2q} + ... + x_{r-1}^{2q}) - alpha (x_1^2 + ... + x_{r-1}^2)
//       = (beta^q - beta)(x_1^{q+1} + ... + x_{r-1}^{q+1}),
//
// its part at infinity B_inf, the Hermitian variety X_0^{q+1} + ... + X_r^{q+1} = 0,
// the degenerate Hermitian cone F: X_0 = 0, X_1^{q+1} + ... + X_{r-1}^{q+1} = 0,
// and the quasi-Hermitian variety (B minus B_inf) together with F.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhcodes/budget.hpp"
#include "qhcodes/geom.hpp"
#include "qhcodes/kernels.hpp"
#include "qhcodes/pointset.hpp"

namespace qh {

enum class VarietyKind { B, BInfinity, Hermitian, QuasiHermitian, ConeF, Other };

std::string_view kind_name(VarietyKind kind);

struct BParams {
  std::uint32_t q = 0;
  unsigned r = 0;
  FieldElem alpha{};
  FieldElem beta{};
};

struct ValidationReport {
  bool valid = false;
  // "(1)", "(2)", "(i)" or "(ii)": the condition that applies to (q, r).
  std::string clause;
  // 4 alpha^{q+1} + (beta^q - beta)^2 for odd q, alpha^{q+1}/(beta^q + beta)^2 for even q.
  FieldElem invariant{};
  // Trace applied under (ii), empty otherwise.
  std::string trace;
  FieldElem trace_value{};
  std::string message;
};

// Shared, cached PG(r, q_f).
std::shared_ptr<const ProjectiveSpace> make_space(FieldPtr field, unsigned r, const Budget& budget = {});

// Throws ParameterError for q = 2, r < 3, alpha = 0 or beta in GF(q); returns
// an invalid report when the q/r-dependent condition fails.
ValidationReport validate_params(const BParams& params);
// First valid (alpha, beta) in encoding order, alpha outer.
std::optional<BParams> find_params(std::uint32_t q, unsigned r);
// Number of valid (alpha, beta) pairs; exhaustive.
std::uint64_t count_valid_params(std::uint32_t q, unsigned r);

class Variety {
 public:
  Variety(std::string label, VarietyKind kind, std::shared_ptr<const ProjectiveSpace> space,
          std::vector<std::uint32_t> points);

  const std::string& label() const { return label_; }
  VarietyKind kind() const { return kind_; }
  const ProjectiveSpace& space() const { return *space_; }
  const std::shared_ptr<const ProjectiveSpace>& space_ptr() const { return space_; }
  const Field& field() const { return space_->field(); }
  unsigned dim() const { return space_->dim(); }

  std::size_t size() const { return points_.size(); }
  // Global point indices, ascending.
  std::span<const std::uint32_t> points() const { return points_; }
  bool contains(std::size_t global_index) const { return members_.test(global_index); }
  const PointSet& membership() const { return members_; }
  // Position of a global point inside points(), if present.
  std::optional<std::size_t> local_index(std::size_t global_index) const;

  const kernels::DigitPlanes& planes() const { return *planes_; }

  const std::optional<BParams>& params() const { return params_; }
  void set_params(const BParams& p) { params_ = p; }

 private:
  std::string label_;
  VarietyKind kind_;
  std::shared_ptr<const ProjectiveSpace> space_;
  std::vector<std::uint32_t> points_;
  PointSet members_;
  std::shared_ptr<const kernels::DigitPlanes> planes_;
  std::optional<BParams> params_;
};

// Throws ParameterError (with the failing clause) on invalid parameters.
Variety build_B(const BParams& params, const Budget& budget = {});
Variety build_B_infinity(const BParams& params, const Budget& budget = {});
Variety build_hermitian(std::uint32_t q, unsigned r, const Budget& budget = {});
Variety build_cone_F(std::uint32_t q, unsigned r, const Budget& budget = {});
Variety build_quasi_hermitian(const BParams& params, const Budget& budget = {});

struct SpectrumReport {
  std::string variety;
  std::string subject;  // "hyperplanes" or "lines"
  std::uint64_t n_points = 0;
  std::map<std::uint64_t, std::uint64_t> counts;  // intersection size -> number of subspaces
  std::uint64_t total = 0;

  std::vector<std::uint64_t> support() const;
};

// |H cap V| for every hyperplane H, indexed like the hyperplanes of the space.
std::vector<std::uint32_t> hyperplane_section_sizes(const Variety& v, const Budget& budget = {});
// Bitset over local point indices of V cap H, for every hyperplane.
std::vector<PointSet> hyperplane_sections(const Variety& v, const Budget& budget = {});

SpectrumReport hyperplane_spectrum(const Variety& v, const Budget& budget = {});
SpectrumReport line_spectrum(const Variety& v, const Budget& budget = {});

struct PredictedSpectrum {
  std::uint64_t n_points = 0;
  std::vector<std::uint64_t> sizes;  // ascending
};

// Closed-form size and hyperplane intersection numbers. `kind` is B, or
// Hermitian/QuasiHermitian (which share the same numbers).
PredictedSpectrum predicted_spectrum(std::uint32_t q, unsigned r, VarietyKind kind);
// Sizes that a line section of B can have.
std::vector<std::uint64_t> predicted_line_sizes(std::uint32_t q);

}  // namespace qh
