#pragma once

#include <vector>

#include "vilenkin/mask.hpp"
#include "vilenkin/refinable.hpp"
#include "vilenkin/report.hpp"

namespace vilenkin {

/// beta^{(l)}_h = beta_h (r_0^l, A^{-1} h) = beta_h w^{l a_{-1}}.  l = 0
/// returns the table unchanged.
CoefficientTable wavelet_coefficients(const CoefficientTable& beta, int l);

/// The p-1 wavelets psi_l(x) = sum_h beta_h^{(l)} phi(A x - h), sampled one
/// level finer than phi (G_{M+1} resolution on G_{-N}).
class WaveletBank {
public:
    WaveletBank(int p, int N, int M) : p_(p), N_(N), M_(M) {}

    int p() const { return p_; }
    int N() const { return N_; }
    int M() const { return M_; }

    const std::vector<CoefficientTable>& coefficient_tables() const { return beta_l_; }
    const std::vector<std::vector<RootSum>>& psi_tables() const { return psi_; }
    void add_wavelet(CoefficientTable beta_l, std::vector<RootSum> psi_values);

    /// Index of the digit word (x_{-N}, ..., x_M), x_{-N} most significant.
    std::size_t value_index(const std::vector<int>& word) const;
    /// psi_l at an arbitrary element; 0 outside G_{-N}.  l runs 1..p-1.
    RootSum psi_value_of(int l, const GroupElement& x) const;

private:
    int p_, N_, M_;
    std::vector<CoefficientTable> beta_l_;
    std::vector<std::vector<RootSum>> psi_;
};

/// Evaluate sum_h beta_h phi(A x - h) at the word (x_{-N},...,x_M); this is
/// both the wavelet sampler and the right-hand side of the refinement
/// equation.
RootSum refine_combination(const PhiTable& ph, const CoefficientTable& coeffs,
                           const std::vector<int>& fine_word);

/// Derive the full bank from a solved pipeline: shifted masks (their support
/// disjointness is asserted), shifted coefficients (re-checked against
/// m_l(chi) = m_0(chi r_0^{-l}) by evaluation), and sampled wavelets.
WaveletBank build_bank(const Mask& m, const CoefficientTable& beta, const PhiTable& ph);

/// The orthonormal-basis checks for W_0 on shifts h in H_0^{(depth)}:
/// (a) every phi shift is orthogonal to every psi_l shift,
/// (b) shifts of different wavelets are orthogonal,
/// (c) shifts of one wavelet are orthonormal,
/// plus the zero-mean identity and, per l, the support intersection
/// E A meet X_0 r_0^l realized as p^N cosets whose prefixes tile G_0^perp.
Report verify_wavelets(const WaveletBank& bank, const PhiTable& ph, const ElementarySet& support,
                       const Mask& m, int depth, double tol = 1e-10);

}  // namespace vilenkin
