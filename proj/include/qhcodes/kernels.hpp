#pragma once

// Data-parallel inner loops: hyperplane sections of a point set and bitset
// containment. Every kernel has a scalar reference and faster variants that
// are selected at runtime; tests check the variants against the reference.
//
// Section kernels work on a "digit plane" layout. Multiplication by a fixed
// field element is GF(p)-linear, so for a hyperplane h the value h . P,
// written in the GF(p)-basis 1, x, ..., x^{m-1}, is a GF(p)-linear function of
// the m(r+1) digits of P. Each of those digits is stored as a plane over all
// points: one bit per point when p = 2, one byte per point otherwise.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qhcodes/gf.hpp"

namespace qh::kernels {

enum class Isa { Scalar, Portable, Avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
// Best supported variant, unless overridden by force_isa() or the
// QHCODES_KERNEL environment variable (scalar | portable | avx2).
Isa active_isa();
void force_isa(Isa isa);
void reset_isa();

// --- bitsets -----------------------------------------------------------------

std::uint64_t popcount(std::span<const std::uint64_t> words, Isa isa);
std::uint64_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, Isa isa);
// a is a subset of b (same word count).
bool is_subset(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, Isa isa);

// --- hyperplane sections -------------------------------------------------------

class DigitPlanes {
 public:
  // `coords` holds n points of PG(r, q_f) back to back, r + 1 entries each.
  DigitPlanes(FieldPtr field, unsigned r, std::span<const FieldElem> coords);

  const Field& field() const { return *field_; }
  std::size_t size() const { return n_; }
  unsigned width() const { return width_; }
  // 64-bit words in an output bitset (padded to a multiple of 4).
  std::size_t words() const { return words_; }
  std::span<const FieldElem> coords() const { return coords_; }

  // Bit t of `out` is set iff point t lies on the hyperplane h. Returns the
  // number of such points. `out` must have words() entries.
  std::uint64_t section(std::span<const FieldElem> h, std::span<std::uint64_t> out, Isa isa) const;
  std::uint64_t section(std::span<const FieldElem> h, std::span<std::uint64_t> out) const {
    return section(h, out, isa_);
  }
  Isa isa() const { return isa_; }
  void set_isa(Isa isa) { isa_ = isa; }

  // Layout, exposed for the kernel translation units.
  struct Layout {
    std::uint32_t p, m, width;
    std::size_t n, words, bytes;            // bytes: per byte plane, multiple of 64
    const std::uint64_t* bits;              // p == 2: plane k at bits + k * words
    const std::uint8_t* digits;             // p odd: plane k at digits + k * bytes
    const std::uint64_t* valid;             // mask of real points
  };
  // For output digit d: planes (and their GF(p) coefficients) that feed it.
  struct Functional {
    std::vector<std::vector<std::uint32_t>> planes;
    std::vector<std::vector<std::uint8_t>> coefs;
  };
  Functional functional(std::span<const FieldElem> h) const;
  Layout layout() const;

 private:
  FieldPtr field_;
  unsigned width_;
  std::size_t n_;
  std::size_t words_;
  std::size_t bytes_;
  std::vector<FieldElem> coords_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::uint64_t> valid_;
  Isa isa_;
};

// Field-arithmetic reference: no digit decomposition involved.
std::uint64_t section_reference(const Field& f, unsigned width, std::span<const FieldElem> coords,
                                std::span<const FieldElem> h, std::span<std::uint64_t> out);

}  // namespace qh::kernels
