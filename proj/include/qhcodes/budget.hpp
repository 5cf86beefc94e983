#pragma once

#include <cstdint>
#include <string>

#include "qhcodes/error.hpp"

namespace qh {

// Upper bound on the elementary work (incidence tests, codeword coordinates,
// group products, ...) a single enumeration may perform.
struct Budget {
  static constexpr std::uint64_t kDefaultWork = 200'000'000'000ULL;

  std::uint64_t max_work = kDefaultWork;

  void require(std::uint64_t work, const std::string& what) const {
    if (work > max_work) {
      throw BudgetExceeded(what + ": needs " + std::to_string(work) +
                           " work units, budget is " + std::to_string(max_work));
    }
  }
};

}  // namespace qh
