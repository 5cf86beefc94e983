#include <gtest/gtest.h>

#include <random>

#include "qhcodes/geom.hpp"
#include "qhcodes/kernels.hpp"

using namespace qh;
using namespace qh::kernels;

namespace {

std::vector<Isa> supported() {
  std::vector<Isa> out;
  for (Isa i : {Isa::Scalar, Isa::Portable, Isa::Avx2}) {
    if (isa_supported(i)) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST(Kernels, BitsetOpsAgreeAcrossVariants) {
  std::mt19937_64 rng(1);
  for (std::size_t words : {4u, 8u, 12u, 64u, 260u}) {
    for (int t = 0; t < 50; ++t) {
      std::vector<std::uint64_t> a(words), b(words);
      for (auto& w : a) w = rng();
      for (std::size_t i = 0; i < words; ++i) b[i] = (t % 2) ? (a[i] | rng()) : rng();
      std::uint64_t pc = 0, ac = 0;
      bool sub = true;
      for (std::size_t i = 0; i < words; ++i) {
        pc += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
        ac += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
        sub = sub && (a[i] & ~b[i]) == 0;
      }
      for (Isa isa : supported()) {
        EXPECT_EQ(popcount(a, isa), pc) << isa_name(isa);
        EXPECT_EQ(and_count(a, b, isa), ac) << isa_name(isa);
        EXPECT_EQ(is_subset(a, b, isa), sub) << isa_name(isa);
      }
    }
  }
}

// Every variant of the section kernel agrees bit for bit with the field
// arithmetic reference, for characteristic 2, small odd and large odd p.
TEST(Kernels, SectionVariantsMatchReference) {
  std::mt19937_64 rng(2);
  for (auto [p, m, r] : std::vector<std::tuple<std::uint32_t, std::uint32_t, unsigned>>{
           {2, 2, 3}, {2, 4, 3}, {2, 3, 2}, {3, 2, 3}, {5, 2, 3}, {7, 2, 2}, {3, 4, 2}, {11, 2, 2}, {13, 1, 3}}) {
    const auto f = Field::make(p, m);
    const ProjectiveSpace s(f, r);
    // A random subset of points, so the padding paths see ragged sizes.
    std::vector<FieldElem> coords;
    for (std::size_t i = 0; i < s.num_points(); ++i) {
      if (rng() % 3) continue;
      const auto c = s.coords(i);
      coords.insert(coords.end(), c.begin(), c.end());
    }
    DigitPlanes planes(f, r, coords);
    std::vector<std::uint64_t> ref(planes.words()), got(planes.words());
    for (int t = 0; t < 60; ++t) {
      const auto h = s.coords(rng() % s.num_hyperplanes());
      std::fill(ref.begin(), ref.end(), 0);
      const auto n_ref = section_reference(*f, r + 1, coords, h, ref);
      for (Isa isa : supported()) {
        std::fill(got.begin(), got.end(), ~std::uint64_t{0});
        const auto n = planes.section(h, got, isa);
        ASSERT_EQ(n, n_ref) << f->describe() << " " << isa_name(isa);
        ASSERT_EQ(got, ref) << f->describe() << " " << isa_name(isa);
      }
    }
  }
}

TEST(Kernels, ForceIsaOverridesSelection) {
  force_isa(Isa::Scalar);
  EXPECT_EQ(active_isa(), Isa::Scalar);
  force_isa(Isa::Portable);
  EXPECT_EQ(active_isa(), Isa::Portable);
  reset_isa();
  EXPECT_TRUE(isa_supported(active_isa()));
}
