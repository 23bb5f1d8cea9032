#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "integra/exact/special.hpp"
#include "integra/shift/operator.hpp"

namespace integra {

using SeriesOperator = ShiftOperator<TruncatedSeries>;

struct DELLModel {
    int n = 2;
    int p_order = 0;
    int w_order = 0;
    int mode_range = -1; // -1: n times the largest single shift admitted by w_order
    ThetaForm theta = ThetaForm::Full;

    // Single-particle shifts k with k(k-1)/2 <= w_order.
    std::pair<int, int> shift_window() const;
    int modes() const;
    std::vector<VarId> coords() const; // x_1..x_n
    std::vector<VarId> series_vars() const; // p, w
    std::vector<int> series_caps() const;
};

struct CurrentModes {
    DELLModel model;
    std::map<int, SeriesOperator> modes;
    bool clipped = false; // an admissible shift vector fell outside [-M, M]

    const SeriesOperator& mode(int k) const;
};

// O_k = sum over shift vectors with sum n_i = k of
// (-1)^k w^{sum n_i(n_i-1)/2} prod_{i<j} theta_p(hbar^{n_i-n_j} x_i/x_j) P^n.
CurrentModes dell_current(const DELLModel& model);

enum class InverseSide { Left, Right }; // O_0^{-1} O_a or O_a O_0^{-1}

SeriesOperator series_inverse(const SeriesOperator& op);
SeriesOperator dell_hamiltonian(const CurrentModes& c, int a, InverseSide side = InverseSide::Left);

struct CommutatorPair {
    int a = 0, b = 0;
    std::vector<std::vector<int>> failing_orders; // (p, w) exponents with a nonzero coefficient
    bool pass() const { return failing_orders.empty(); }
};

struct CommutativityCertificate {
    DELLModel model;
    InverseSide side = InverseSide::Left;
    std::vector<CommutatorPair> pairs;
    std::optional<std::vector<int>> first_failure; // lowest total order, then lex
    bool clipped = false;
    bool pass() const { return !first_failure.has_value(); }
};

CommutativityCertificate dell_commutativity_certificate(const DELLModel& model, InverseSide side = InverseSide::Left);

// sum_{|I|=r} prod_{i in I, j notin I} theta_p(hbar x_i/x_j)/theta_p(x_i/x_j) P^I,
// in the same (p, w) series ring with w capped at 0.
SeriesOperator ers_hamiltonian(int n, int r, int p_order, ThetaForm theta = ThetaForm::Full);

struct DegenerationStep {
    int a = 0;
    RationalFunction factor;          // lower tier = factor * u^I * upper tier, per term
    std::vector<RationalFunction> u;  // momentum rescaling per particle
    bool pass = false;
    std::string failure;              // offending shift and order
};

struct DegenerationReport {
    int n = 0, p_order = 0, w_order = 0;
    std::vector<DegenerationStep> dell_to_ers; // DELL mod w against eRS
    std::vector<DegenerationStep> ers_to_trs;  // eRS mod p against tRS with coupling hbar
    bool pass() const;
};

// Momentum rescaling u_j = hbar^{-(j-1)} relates the ordered DELL products to eRS.
DegenerationReport degeneration_check(int n, int p_order, int w_order);

} // namespace integra
