#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/report.hpp"
#include "vilenkin/scalar.hpp"
#include "vilenkin/tree.hpp"

namespace vilenkin {

/// Unimodular phase assigned to each allowed window (default is 1
/// everywhere); the all-zero window must keep phase 1.
using PhaseTable = std::map<Window, RootScalar>;

/// The mask m_0 as a table of p^{N+1} scalars lambda indexed by the exponent
/// word (alpha_{-N}, ..., alpha_{-1}, alpha_0).  Every entry is zero or
/// unimodular; the value of m_0 at an arbitrary character is obtained by
/// dropping exponents below -N (constancy on G_{-N}^perp cosets) and above 0
/// (periodicity) and looking the remaining window up.
class Mask {
public:
    Mask(int p, int N);

    /// Table index of the word (alpha_{-N}, ..., alpha_0):
    /// k = alpha_{-N} + alpha_{-N+1} p + ... + alpha_0 p^N.
    std::size_t index_of(const std::vector<int>& alphas) const;
    std::vector<int> word_of(std::size_t k) const;

    int p() const { return p_; }
    int N() const { return N_; }
    std::size_t size() const { return lambda_.size(); }

    const RootScalar& at(std::size_t k) const { return lambda_[k]; }
    const RootScalar& at_word(const std::vector<int>& alphas) const { return lambda_[index_of(alphas)]; }
    void set(std::size_t k, const RootScalar& v) { lambda_[k] = v; }

    /// m_0(chi) after the T1/T2 reduction to the window [-N, 0].
    RootScalar value(const Character& chi) const;
    /// m_0 on the coset word of a CharCoset shifted n times by A^{-1}: the
    /// window covers exponent indices [n-N, n].
    RootScalar value_at_shift(const CharCoset& coset, int n) const;

    bool exact() const;
    std::vector<std::size_t> nonzero_indices() const;

private:
    int p_, N_;
    std::vector<RootScalar> lambda_;
};

/// Mask generated by a tree: lambda at (alpha_{-N},...,alpha_0) is nonzero
/// exactly when (alpha_0 -> alpha_{-1} -> ... -> alpha_{-N}), read root-side
/// first, is one of the tree's windows; the nonzero value is the assigned
/// phase (1 by default).
Mask mask_from_tree(const PTree& tree, const PhaseTable* phases = nullptr);

/// The three mask conditions: lambda at the zero word equals 1, every nonzero
/// entry is unimodular, and each row (alpha_{-N},...,alpha_{-1}) holds exactly
/// one nonzero entry (unit row sums).
Report check_mask(const Mask& m);

/// Refinement coefficients beta over H_0^{(N+1)}, indexed by
/// j = a_{-1} + a_{-2} p + ... + a_{-N-1} p^N.
class CoefficientTable {
public:
    CoefficientTable(int p, int N);

    int p() const { return p_; }
    int N() const { return N_; }
    std::size_t size() const { return beta_.size(); }
    const RootSum& at(std::size_t j) const { return beta_[j]; }
    void set(std::size_t j, const RootSum& v) { beta_[j] = v; }

    /// Digits (a_{-1}, ..., a_{-N-1}) of the shift h_j.
    std::vector<int> digits_of(std::size_t j) const;
    GroupElement shift(const GroupParams& params, std::size_t j) const;

    /// sum_h |beta_h|^2; equals p when the mask satisfies the row condition.
    RootSum sum_norm2() const;

private:
    int p_, N_;
    std::vector<RootSum> beta_;
};

/// Solve m_0(chi_k) = (1/p) sum_j beta_j conj((chi_k, A^{-1} h_j)) by the
/// character-orthogonality inversion and confirm the round trip reproduces
/// the mask (exactly in exact mode).  Throws ConsistencyError if not.
CoefficientTable solve_coefficients(const Mask& m);

/// Evaluate (1/p) sum_j beta_j conj((chi_k, A^{-1} h_j)) at table index k.
RootSum mask_from_coefficients(const CoefficientTable& beta, std::size_t k);

/// The shifted masks m_l(chi) = m_0(chi r_0^{-l}) for l = 1..p-1, as tables:
/// lambda^{(l)} at (..., alpha_0) = lambda at (..., (alpha_0 - l) mod p).
/// Verifies that the supports are pairwise disjoint.
std::vector<Mask> wavelet_shift_masks(const Mask& m);

}  // namespace vilenkin
