#pragma once

// Massey secret sharing S(C): column 0 of a generator matrix of C carries the
// secret, participant i holds the share u . g_i for i = 1..n-1. A set of
// participants is qualified iff some codeword of the dual code is supported on
// it together with coordinate 0 and is nonzero at 0.
//
// The schemes built from a variety use C = C(V)^perp, so the dual is C(V)
// itself. When C(V) is minimal the minimal access sets are exactly the sets
// V \ ({P0} cup Pi) for the hyperplanes Pi not on P0.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qhcodes/budget.hpp"
#include "qhcodes/code.hpp"

namespace qh {

// Generator matrix of the dual code: a basis of the null space of G.
LinearCode dual_code(const LinearCode& c);

struct Scheme {
  LinearCode code;   // shares are u . g_i for the columns of this code
  LinearCode check;  // its dual
  std::size_t participants() const { return code.n - 1; }
};

// Massey scheme on an arbitrary code.
Scheme make_massey_scheme(const LinearCode& c);
// S(V^perp; P0): Massey scheme on the dual of C(V).
Scheme make_scheme(const Variety& v, std::optional<std::uint32_t> p0 = std::nullopt);

// Named so reports can record it; the seed -> shares mapping is stable.
inline constexpr std::string_view kRngName = "mt19937_64";

struct Dealing {
  Vec u;
  FieldElem secret;
  Vec shares;  // shares[i - 1] belongs to participant i
};

// u is uniform over the q_f^{k-1} solutions of u . g_0 = secret.
Dealing deal(const Scheme& s, FieldElem secret, std::uint64_t seed);
Dealing deal(const Scheme& s, FieldElem secret, std::mt19937_64& rng);

using AccessSet = std::vector<std::uint32_t>;  // sorted participant indices, 1-based

enum class RecoverStatus { Recovered, NotQualified, Inconsistent };
std::string_view status_name(RecoverStatus st);

struct Recovery {
  RecoverStatus status = RecoverStatus::NotQualified;
  FieldElem secret{};
};

// `shares` lists the shares of `subset`, in the same order.
Recovery recover(const Scheme& s, const AccessSet& subset, std::span<const FieldElem> shares);

struct AccessStructure {
  std::size_t participants = 0;
  std::vector<AccessSet> sets;  // sorted, no duplicates
  std::string provenance;

  std::map<std::size_t, std::size_t> size_profile() const;
  bool contains(const AccessSet& a) const;
};

// Sorts and deduplicates sets.
AccessStructure make_structure(std::size_t participants, std::vector<AccessSet> sets, std::string provenance);

// Throws PreconditionError when C(v) is not minimal (cutting-blocking check).
AccessStructure access_structure(const Variety& v, std::optional<std::uint32_t> p0 = std::nullopt,
                                 const Budget& budget = {});

struct DemocracyReport {
  std::vector<std::uint64_t> per_participant;  // index i - 1 for participant i
  std::map<std::uint64_t, std::uint64_t> histogram;  // membership count -> participants
  std::vector<std::uint32_t> dictatorial;
  bool democratic = false;
};
DemocracyReport democracy_report(const AccessStructure& a);

bool is_antichain(const AccessStructure& a);
bool structures_equal(const AccessStructure& a, const AccessStructure& b);

struct PerfectnessReport {
  // Secrets compatible with the shares of the subset. Each one is implied by
  // q_f^multiplicity_log dealing vectors u.
  std::vector<std::uint32_t> secrets;
  std::uint64_t multiplicity_log = 0;
  // Dual codewords enumerated, and those giving a relation on {0} cup subset.
  std::uint64_t checked = 0;
  std::uint64_t relations = 0;
  bool qualified = false;
  bool uniform = false;
};
// Enumerates all q_f^{dim check} words of the dual code. Each one supported
// on {0} cup subset is a linear relation every dealing satisfies; the secret is
// pinned iff one of them is nonzero at 0, otherwise every value is equally
// likely.
PerfectnessReport perfectness_check(const Scheme& s, const AccessSet& subset, const Dealing& dealing,
                                    const Budget& budget = {});

// --- permutation groups ---------------------------------------------------------

// One-line notation on points 1..degree; perm[0] is unused and 0.
using Perm = std::vector<std::uint32_t>;

Perm identity_perm(std::size_t degree);
// "(1,2,3)(4,5)"; whitespace ignored, "()" is the identity.
Perm parse_cycles(std::string_view text, std::size_t degree);
Perm compose(const Perm& a, const Perm& b);  // x -> b(a(x))

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators);
  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  // Breadth-first closure; throws BudgetExceeded past max_order elements.
  const std::vector<Perm>& elements(std::size_t max_order = 1'000'000) const;
  std::size_t order() const { return elements().size(); }

 private:
  std::size_t degree_;
  std::vector<Perm> gens_;
  mutable std::vector<Perm> elements_;
};

PermGroup group_closure(std::vector<Perm> generators, std::size_t degree, std::size_t max_order = 1'000'000);

AccessSet apply(const Perm& g, const AccessSet& a);
AccessStructure develop(const std::vector<AccessSet>& starters, const PermGroup& g, std::size_t participants);
// Every set maps to a set of the structure.
bool is_automorphism(const Perm& g, const AccessStructure& a);

// The worked example: Hermitian surface, q = 2, stabilizer of P_1.
struct ExampleFixture {
  std::size_t degree = 0;
  std::uint32_t fixed_point = 0;
  std::vector<std::string> generator_text;
  std::vector<Perm> generators;
  std::vector<AccessSet> starters;
};
ExampleFixture load_example(const std::string& path);
ExampleFixture parse_example(std::string_view text);

}  // namespace qh
