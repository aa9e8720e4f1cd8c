#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "vilenkin/mask.hpp"
#include "vilenkin/refinable.hpp"
#include "vilenkin/report.hpp"
#include "vilenkin/transform.hpp"
#include "vilenkin/tree.hpp"
#include "vilenkin/wavelet.hpp"

namespace vilenkin {

using json = nlohmann::ordered_json;

// Trees.  Node order is the canonical preorder, parent of the root is null.
json tree_to_json(const PTree& tree);
PTree tree_from_json(const json& j);
std::string tree_to_dot(const PTree& tree);

// Masks.  JSON keeps the nonzero entries; CSV lists every row as
// "alpha_-N,...,alpha_0,re,im" in table-index order.
json mask_to_json(const Mask& m);
Mask mask_from_json(const json& j);
std::string mask_to_csv(const Mask& m);

// Coefficients: "a_-1,...,a_-N-1,re,im" in table-index order.
json beta_to_json(const CoefficientTable& beta);
CoefficientTable beta_from_json(const json& j, int p, int N);
std::string beta_to_csv(const CoefficientTable& beta);

// Support sets; coset words are listed beta_{-N} first.
json elementary_to_json(const ElementarySet& e);
ElementarySet elementary_from_json(const json& j);
std::string elementary_to_csv(const ElementarySet& e);

// Sampled refinable function (hat and values).
json phi_to_json(const PhiTable& ph);
PhiTable phi_from_json(const json& j);
// "beta_-N,...,beta_{M-1},re,im" over the support cosets.
std::string phi_hat_to_csv(const PhiTable& ph);
// "x_-N,...,x_{M-1},re,im" over the whole value grid.
std::string phi_values_to_csv(const PhiTable& ph);
// "x_-N,...,x_M,re,im" for one wavelet (l in 1..p-1).
std::string psi_values_to_csv(const WaveletBank& bank, int l);

json bank_to_json(const WaveletBank& bank);
WaveletBank bank_from_json(const json& j);

json report_to_json(const Report& rep);

// Signals: CSV with a "# p=.. R=.. S=.." comment, then "digits,re,im" rows,
// digits as a base-p string with the digit at the lowest group index first.
std::string signal_to_csv(const FiniteSignal& f);
FiniteSignal signal_from_csv(const std::string& text);

json coefficients_to_json(const CoefficientBundle& c);
CoefficientBundle coefficients_from_json(const json& j);

/// Phase table file: {"windows": [{"window": [...], "phase_exp": e} or
/// {"window": [...], "re": .., "im": ..}]}.
PhaseTable phases_from_json(const json& j, int p);

/// Everything `mra derive` produces, bundled in one file.
struct MraBundle {
    std::optional<PTree> tree;
    Mask mask;
    ElementarySet support;
    PhiTable phi;
    CoefficientTable beta;
};

json bundle_to_json(const MraBundle& b);
MraBundle bundle_from_json(const json& j);

}  // namespace vilenkin
