#pragma once

#include <map>
#include <string>
#include <vector>

#include "integra/exact/rational_function.hpp"

namespace integra {

// Weakly decreasing, nonnegative, padded with zeros to the ambient length.
using Partition = std::vector<int>;

bool is_partition(const Partition& p);
int partition_size(const Partition& p);
int partition_length(const Partition& p); // number of nonzero parts
Partition pad(Partition p, int n);
// a >= b in dominance order (equal sizes required).
bool dominates(const Partition& a, const Partition& b);
// Partitions of k with at most n parts, each padded to n, descending lex.
std::vector<Partition> partitions(int k, int n);
std::string partition_str(const Partition& p);
Partition parse_partition(const std::string& s, int n);

// m_mu in the given variables.
LaurentPolynomial monomial_symmetric(const Partition& mu, const std::vector<VarId>& x);

// Coefficients in the monomial basis m_mu of n variables.
struct SymmetricPolynomial {
    int n = 0;
    std::map<Partition, RationalFunction> coeffs;

    RationalFunction coefficient(const Partition& mu) const;
    RationalFunction expand(const std::vector<VarId>& x) const;
    // Throws DegenerateInput if f is not a symmetric polynomial in x.
    static SymmetricPolynomial from_function(const RationalFunction& f, const std::vector<VarId>& x);
    SymmetricPolynomial substitute(const Substitution& s) const;
    SymmetricPolynomial scaled(const RationalFunction& c) const;
    bool operator==(const SymmetricPolynomial& o) const;
};

std::vector<VarId> xi_vars(int n);

// Eigenvector of the k = 1 operator with coupling hbar, triangular in dominance,
// normalized so that the m_lambda coefficient is 1.
SymmetricPolynomial macdonald_oracle(const Partition& lambda, int n);
// Gram-Schmidt in the (q, hbar) inner product on power sums; intended for |lambda| <= 4.
SymmetricPolynomial macdonald_gram_schmidt(const Partition& lambda, int n);
// det(x_i^{lambda_j + n - j}) / det(x_i^{n - j})
SymmetricPolynomial schur_polynomial(const Partition& lambda, int n);

enum class LocusDirection { AsPrinted, Flipped };

// a_{i+1}/a_i = q^{lambda_{i+1} - lambda_i} hbar^{+1} as printed, hbar^{-1} flipped.
std::vector<RationalFunction> truncation_locus(const Partition& lambda, LocusDirection dir = LocusDirection::AsPrinted);
// Representative a_i = q^{lambda_i} hbar^{+-(i-1)}.
std::vector<RationalFunction> locus_point(const Partition& lambda, LocusDirection dir);

RationalFunction elementary(const std::vector<RationalFunction>& a, int k);
bool is_monomial(const RationalFunction& f);

struct EigenEntry {
    int k = 0;
    RationalFunction eigenvalue;
    RationalFunction residual; // H_k P - eigenvalue P
    bool exact = false;
    RationalFunction normalization; // eigenvalue / (scale^k e_k(a))
};

struct EigenReport {
    Partition lambda;
    int n = 0;
    LocusDirection direction = LocusDirection::Flipped;
    std::vector<EigenEntry> entries;
    RationalFunction scale; // eigenvalue_1 / e_1(a)
    bool scale_is_monomial = false;
    bool top_is_q_power = false; // eigenvalue_n = q^{|lambda|}
    bool all_exact() const;
};

EigenReport eigencheck(const Partition& lambda, int n, LocusDirection dir = LocusDirection::Flipped);
// The direction for which e_1 on the locus matches the k = 1 eigenvalue up to a monomial.
LocusDirection resolve_locus_direction();

} // namespace integra
