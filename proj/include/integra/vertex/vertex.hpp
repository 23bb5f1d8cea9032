#pragma once

#include <optional>
#include <string>
#include <vector>

#include "integra/exact/series.hpp"
#include "integra/macdonald/macdonald.hpp"

namespace integra {

// Block two of the vertex sum uses x_{i+1,k}/x_{i,j} as printed, or the inverse ratio.
enum class VertexConvention { AsPrinted, InvertedBlock2 };

// Nested subsets S_1 c ... c S_n = {1..n}, stored as the order in which
// indices enter: S_i = first i entries (1-based indices).
struct FlagFixedPoint {
    std::vector<int> order;

    int n() const { return static_cast<int>(order.size()); }
    std::vector<int> subset(int i) const { return {order.begin(), order.begin() + i}; }
    // S_i = {n-i+1, ..., n}
    static FlagFixedPoint reversed(int n);
    static FlagFixedPoint identity(int n);
    static std::vector<FlagFixedPoint> all(int n);
    std::string str() const;
};

std::vector<VarId> z_vars(int n); // z_1..z_{n-1}
std::vector<VarId> a_vars(int n);

struct VertexSpec {
    FlagFixedPoint fp;
    std::vector<int> caps; // per node degree d_i, size n-1
    VertexConvention convention = VertexConvention::InvertedBlock2;
    std::vector<Monomial> a; // values of a_1..a_n; empty means the symbols a_i
};

// Degree vectors (d_1..d_{n-1}) index the series in z; each coefficient
// carries the (q/hbar)^{d_i} factor. Throws PoleError on an unmatched
// vanishing denominator.
TruncatedSeries vertex_coefficients(const VertexSpec& spec);

struct TruncationReport {
    Partition lambda;
    bool terminated = false;   // no term with a node degree above |lambda|
    int max_degree = 0;        // largest total degree present
    bool polynomial = false;   // V xi^{lambda reversed} has no negative powers
    bool symmetric = false;
    bool matches_oracle = false;
    RationalFunction constant; // V xi^{..} = constant * P_lambda
    std::string failure;       // pole or other reason, empty on success
    bool pass() const { return terminated && polynomial && symmetric && matches_oracle; }
};

struct TruncationOptions {
    VertexConvention convention = VertexConvention::InvertedBlock2;
    LocusDirection direction = LocusDirection::Flipped;
    std::optional<FlagFixedPoint> fp; // default: reversed chain
};

TruncationReport truncation_check(const Partition& lambda, int n, int cap, const TruncationOptions& opt = {});

struct ConventionCandidate {
    VertexConvention convention;
    LocusDirection direction;
    FlagFixedPoint fp;
};

// All combinations for which lambda = (1,0,..,0) terminates and matches the oracle.
std::vector<ConventionCandidate> resolve_vertex_convention(int n = 2);

struct EigenResidualOptions {
    bool electric = true;
    // Shift base and coupling of the operator, as monomials in q and hbar.
    Monomial shift_base;
    Monomial coupling;
    std::optional<std::vector<int>> sigma; // shift of a_m (or xi_m) pairs with xi_{sigma m} (or a_{sigma m})
    Substitution specialize;               // applied to all coefficients, e.g. hbar -> q
    static EigenResidualOptions electric_default();
    static EigenResidualOptions magnetic_default();
};

struct EigenResidualReport {
    int n = 0;
    int cap = 0;
    std::vector<int> sigma;
    std::vector<RationalFunction> responses; // prefactor response to each single shift
    bool cocycle = false;                    // multi-shift responses independent of order
    std::vector<RationalFunction> constants; // c_r in H_r V = c_r e_r V
    std::vector<TruncatedSeries> residuals;  // per r, through the cap
    std::vector<std::optional<std::vector<int>>> first_failure; // lowest nonzero order per r
    bool pass() const;
};

// Applies H_r to the prefactor-normalized vertex and subtracts c_r e_r;
// responses and c_r are fitted at the lowest orders and the rest is checked.
EigenResidualReport eigen_residual(int n, int cap, const EigenResidualOptions& opt);

} // namespace integra
