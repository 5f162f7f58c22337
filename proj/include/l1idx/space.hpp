#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l1idx/ordinal.hpp"
#include "l1idx/rational.hpp"
#include "l1idx/schreier.hpp"

namespace l1idx {

// Named space recipes: the Schreier space X_alpha, the Tsirelson space
// T(S_alpha, theta), finite l1 blocks, an l1 step appending scalar
// coordinates (the successor stage of the Szlenk-style recipe), and l2
// sums of finite-dimensional pieces (its limit stage).
struct SpaceDescriptor {
    enum class Kind { Schreier, Tsirelson, FiniteL1, SzlenkStep, L2Sum };

    Kind kind = Kind::FiniteL1;
    Ordinal alpha;                          // Schreier, Tsirelson
    Rat theta = Rat(1, 2);                  // Tsirelson, in (0,1)
    int dim = 0;                            // FiniteL1
    std::vector<SpaceDescriptor> children;  // SzlenkStep (one), L2Sum
    int extra = 0;                          // SzlenkStep: appended scalar coords

    static SpaceDescriptor schreier(Ordinal a);
    static SpaceDescriptor tsirelson(Ordinal a, Rat theta);
    static SpaceDescriptor finite_l1(int k);
    static SpaceDescriptor szlenk_step(SpaceDescriptor inner, int extra);  // finite-dim inner
    static SpaceDescriptor l2_sum(std::vector<SpaceDescriptor> children);  // finite-dim children

    bool operator==(const SpaceDescriptor& o) const { return to_key(*this) == to_key(o); }

    static std::string to_key(const SpaceDescriptor& s);
};

std::string to_string(const SpaceDescriptor& s);
// "schreier(1)", "tsirelson(w,1/2)", "l1(4)", "szlenk(l1(2),1)",
// "l2sum(l1(1),l1(1))".
SpaceDescriptor parse_space(std::string_view text);

std::optional<int> dimension(const SpaceDescriptor& s);  // nullopt = infinite
// Exact max-of-functionals norm available (no l2 combination anywhere).
bool is_polyhedral(const SpaceDescriptor& s);
// The norm is plainly sum of absolute coordinates.
bool is_l1_like(const SpaceDescriptor& s);

inline constexpr int kMaxSchreierNormSupport = 18;
inline constexpr int kMaxTsirelsonNormSupport = 16;
inline constexpr int kMaxTsirelsonSetBound = 16;
inline constexpr int kMaxL1SetBound = 16;
inline constexpr std::size_t kMaxNormingSetSize = 2000000;

// sup over E in S_alpha of |sum_{i in E} x_i|, exact.  Full enumeration over
// the value range when small; positive/negative sign-split beyond.
Rat schreier_norm(const RationalVector& x, const Ordinal& alpha);

// Least fixed point of the implicit Tsirelson equation, computed by the
// increasing approximant iteration starting from the sup norm; interval
// decompositions with admissible minima realize the inner sup.  Exact.
Rat tsirelson_norm(const RationalVector& x, const Ordinal& alpha, const Rat& theta);

struct NormValue {
    bool exact = false;
    Rat value;   // when exact
    bool sq_exact = false;
    Rat square;  // when sq_exact
    Rat lo, hi;  // enclosure, lo == hi == value when exact
};

// den_bound controls the enclosure width of l2 combinations (~1/den_bound).
NormValue space_norm(const RationalVector& x, const SpaceDescriptor& s,
                     const Int& den_bound = Int(1000000));
// The exact value; throws DomainError when only an enclosure exists.
Rat exact_norm(const RationalVector& x, const SpaceDescriptor& s);

struct NormingSet {
    std::vector<RationalVector> functionals;  // closed under negation
    int support_bound = 0;
};

// Polyhedral norming set inducing the space norm on vectors supported in
// [1, support_bound]: Schreier uses +-chi_E, Tsirelson the theta-weighted
// admissible closure, l1-like spaces the sign patterns; +-e_i* always
// included.
NormingSet norming_set(const SpaceDescriptor& s, int support_bound);
Rat induced_norm(const NormingSet& g, const RationalVector& x);
// Structural membership test used by certificate verification: for l1-like
// spaces any functional in the sup-norm unit ball is accepted.
bool valid_dual_functional(const SpaceDescriptor& s, const RationalVector& f);

struct NormalizedVector {
    RationalVector v;
    Rat width;  // norm(v) lies in [1 - width, 1]; 0 when exact
};
NormalizedVector normalize(const RationalVector& x, const SpaceDescriptor& s,
                           const Int& den_bound = Int(1000000));

// A normalized vector in the span of `node` whose first n coordinates
// vanish; found by the exact nullspace of the prefix restriction, first
// kernel vector under the leftmost-pivot rule.  Requires span dim > n.
RationalVector block_vector_zero_prefix(const std::vector<RationalVector>& node, int n,
                                        const SpaceDescriptor& s);

// A normalized vector in the span of `node` annihilated by every given
// functional.  Requires span dim > number of functionals.
RationalVector annihilating_block(const std::vector<RationalVector>& node,
                                  const std::vector<RationalVector>& functionals,
                                  const SpaceDescriptor& s);

}  // namespace l1idx
