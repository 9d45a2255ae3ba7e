#ifndef LPDEC_CUTS_HPP
#define LPDEC_CUTS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "lpdec/code.hpp"
#include "lpdec/lp.hpp"

namespace lpdec {

// A constraint counts as violated only when LHS - RHS exceeds this, so
// tight-but-satisfied rows at simplex vertices are never re-added.
inline constexpr double kEpsCut = 1e-9;

// Violated parity inequality at a point: sum over V minus sum over the rest
// of the support exceeds |V| - 1. check is the row index, or -1 when the
// support comes from a combined (redundant) row.
struct Cut {
    int check = -1;
    std::vector<int> support;
    std::vector<int> subset_v;
    double violation = 0.0;
};

LinearConstraint constraint_from_subset(const std::vector<int>& neighborhood,
                                        const std::vector<int>& subset_v);

// Constraint for a cut, with provenance attached.
LinearConstraint to_constraint(const Cut& cut);

// Sorted-prefix search over one check's neighborhood: at most one odd subset
// can be violated, and it consists of the largest entries of x on the
// support (ties broken toward the lower variable index).
std::optional<Cut> find_cut_for_check(const std::vector<double>& x,
                                      const std::vector<int>& neighborhood,
                                      double eps_cut = kEpsCut);

// All cuts at x, ascending check index, at most one per check.
std::vector<Cut> find_all_cuts(const ParityCheckCode& code, const std::vector<double>& x,
                               double eps_cut = kEpsCut);

// Out-of-range x entries are clamped into [0,1]; this counter tracks how
// often that happened (process-wide, for diagnostics only).
std::uint64_t clamped_input_count();
void reset_clamped_input_count();

}  // namespace lpdec

#endif
