#pragma once

#include <complex>
#include <vector>

#include "vilenkin/refinable.hpp"
#include "vilenkin/report.hpp"
#include "vilenkin/wavelet.hpp"

namespace vilenkin {

/// A signal sampled on the p^{R+S} cosets of G_S inside G_{-R}: digit words
/// (x_{-R}, ..., x_{S-1}) with x_{-R} most significant.  Inner products carry
/// the weight p^{-S} per point.
struct FiniteSignal {
    int p = 0;
    int R = 0;
    int S = 0;
    std::vector<std::complex<double>> samples;

    std::size_t expected_size() const;
    std::size_t index_of(const std::vector<int>& word) const;
    std::vector<int> word_of(std::size_t idx) const;
    double norm2() const;  // sum |f|^2 p^{-S}
};

/// Analysis output.  details[d][l-1] holds the level -d detail coefficients
/// of psi_l over H_0^{(R-d)} (indexed like the beta tables: a_{-1} is the
/// least significant digit); approx holds the approximation coefficients at
/// the deepest level, over H_0^{(R-levels+1)}.
struct CoefficientBundle {
    int p = 0;
    int R = 0;
    int S = 0;
    int levels = 0;
    std::vector<std::complex<double>> approx;
    std::vector<std::vector<std::vector<std::complex<double>>>> details;

    double energy() const;
};

/// Level-0 coefficients are inner products against the shifted phi and psi_l;
/// deeper levels follow the coefficient recursion
/// a_{j}(g) = p^{-1/2} sum_h conj(beta_h) a_{j+1}(A g + h) and its psi
/// analogues.  Requires R >= N + levels and S >= M + 1.
CoefficientBundle analyze(const FiniteSignal& f, const PhiTable& ph, const WaveletBank& bank,
                          const CoefficientTable& beta, int levels);

/// Inverse of analyze on the span of the shifted basis; on arbitrary input it
/// reconstructs the orthogonal projection onto the truncated V_1 span.
FiniteSignal synthesize(const CoefficientBundle& coeffs, const PhiTable& ph,
                        const WaveletBank& bank, const CoefficientTable& beta);

/// Signal energy, coefficient energy, residual energy (via one synthesis),
/// and the Pythagoras identity between them.  Completeness holds at finite
/// level only; the report carries a note saying so.
Report energy_report(const FiniteSignal& f, const CoefficientBundle& coeffs, const PhiTable& ph,
                     const WaveletBank& bank, const CoefficientTable& beta, double tol = 1e-10);

}  // namespace vilenkin
