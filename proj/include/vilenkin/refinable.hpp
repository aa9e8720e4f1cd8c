#pragma once

#include <map>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/mask.hpp"
#include "vilenkin/report.hpp"

namespace vilenkin {

/// The support of an elementary Fourier transform: a union of p^N cosets of
/// G_{-N}^perp, each named by its exponent word (beta_{-N}, ..., beta_{M-1}).
class ElementarySet {
public:
    ElementarySet(int p, int N, int M, std::vector<CharCoset> cosets);
    /// M inferred as (largest top nonzero index) + 1 over the members.
    static ElementarySet from_cosets(int p, int N, std::vector<CharCoset> cosets);

    int p() const { return p_; }
    int N() const { return N_; }
    int M() const { return M_; }
    const std::vector<CharCoset>& cosets() const { return cosets_; }
    std::size_t size() const { return cosets_.size(); }
    bool contains(const CharCoset& c) const;

    bool operator==(const ElementarySet& o) const {
        return p_ == o.p_ && N_ == o.N_ && cosets_ == o.cosets_;
    }

private:
    int p_, N_, M_;
    std::vector<CharCoset> cosets_;  // sorted, unique
};

/// Walk the mask windows from the zero state and collect every coset whose
/// entire padded window word stays inside the mask support.  For a mask made
/// from an N-valid tree of height H this yields the (N, H-2N)-elementary
/// support of phi-hat.  Throws MaskError when the walk fails to terminate or
/// (with require_elementary) the result is not elementary.
ElementarySet support_set(const Mask& m, bool require_elementary = true);

/// Independent route: enumerate all p^{M+N+1} cosets of G_{-N}^perp inside
/// G_{M+1}^perp and keep those with m(chi A^{-n}) != 0 for n = 0..M+1.
/// With cross_check the result is compared against the window walk.
ElementarySet support_set_bruteforce(const Mask& m, int M, bool cross_check = true);

enum class ElementaryChecks {
    Full,    ///< cardinality, trivial member, distinct prefixes, shells
    Tiling,  ///< cardinality and distinct prefixes only (what shift orthonormality needs)
};

Report is_elementary(const ElementarySet& e, ElementaryChecks mode = ElementaryChecks::Full);

/// Sampled refinable function: hat values on the support cosets and time
/// values on the p^{M+N} cosets of G_M inside G_{-N}.
class PhiTable {
public:
    PhiTable(int p, int N, int M) : p_(p), N_(N), M_(M) {}

    int p() const { return p_; }
    int N() const { return N_; }
    int M() const { return M_; }

    const std::map<CharCoset, RootSum>& hat() const { return hat_; }
    void set_hat(const CharCoset& c, RootSum v) { hat_.insert_or_assign(c, std::move(v)); }
    /// 0 outside the support.
    RootSum hat_at(const CharCoset& c) const;

    bool has_values() const { return !values_.empty(); }
    const std::vector<RootSum>& values() const { return values_; }
    void set_values(std::vector<RootSum> v) { values_ = std::move(v); }
    /// Index of the digit word (x_{-N}, ..., x_{M-1}), x_{-N} most significant.
    std::size_t value_index(const std::vector<int>& word) const;
    std::vector<int> value_word(std::size_t idx) const;
    /// phi at an arbitrary element: 0 outside G_{-N}, and only the digits
    /// below index M matter.
    RootSum value_of(const GroupElement& x) const;

    RootSum norm2() const;  // sum |phi|^2 p^{-M}

private:
    int p_, N_, M_;
    std::map<CharCoset, RootSum> hat_;
    std::vector<RootSum> values_;
};

/// phi-hat as the finite telescoping product prod_{n=0}^{M+N} m(zeta A^{-n})
/// over the support set (all further factors equal m at the trivial window).
PhiTable phi_hat(const Mask& m, const ElementarySet& support);

/// Fill the time samples by the closed-form inversion
/// phi(x) = sum_zeta phi-hat(zeta) p^{-N} (zeta, x).
void phi_values(PhiTable& ph);

/// The forward transform of the stored values on every coset word of
/// G_{-N}^perp in G_M^perp; agrees with the stored hat on the support and
/// vanishes off it when the table is consistent.
std::map<CharCoset, RootSum> hat_from_values(const PhiTable& ph);

/// Shift orthonormality, both routes: the Fourier row sums (for every prefix
/// (alpha_{-N},...,alpha_{-1}) the squared hat values over the tail sum to 1)
/// and the time-side Gram matrix of the shifts h in H_0^{(depth)} computed on
/// G_{-N-depth} with weight p^{-M} per G_M coset.
Report verify_shift_orthonormality(const PhiTable& ph, int depth, double tol = 1e-10);

/// The refinement identities: hat factorization
/// phi-hat(chi) = m(chi) phi-hat(chi A^{-1}) on all cosets inside
/// G_{M+1}^perp, the vanishing of the mask product on the outer shell, and
/// the time-side equation phi(x) = sum_h beta_h phi(A x - h) on the
/// G_{M+1}-resolution grid.
Report verify_refinement(const PhiTable& ph, const Mask& m, const CoefficientTable& beta,
                         double tol = 1e-12);

}  // namespace vilenkin
