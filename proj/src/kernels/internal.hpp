#pragma once

#include <cstdint>

#include "qhcodes/kernels.hpp"

namespace qh::kernels::detail {

using Layout = DigitPlanes::Layout;
using Functional = DigitPlanes::Functional;

std::uint64_t section_portable(const Layout& l, const Functional& fn, std::uint64_t* out);
std::uint64_t popcount_portable(const std::uint64_t* a, std::size_t n);
std::uint64_t and_count_portable(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
bool is_subset_portable(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

#if defined(QHCODES_HAVE_AVX2)
std::uint64_t section_avx2(const Layout& l, const Functional& fn, std::uint64_t* out);
std::uint64_t popcount_avx2(const std::uint64_t* a, std::size_t n);
std::uint64_t and_count_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
bool is_subset_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
#endif

}  // namespace qh::kernels::detail
