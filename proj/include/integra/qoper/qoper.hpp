#pragma once

#include <complex>
#include <string>
#include <vector>

#include "integra/errors.hpp"
#include "integra/qoper/upoly.hpp"

namespace integra {

// Trivialized oper data for SL(r+1): sections s_1..s_{r+1}, twist diag(xi),
// singularity polynomial Lambda and an optional scalar gauge f(z) that the
// sections are understood to carry.
template <class S>
struct QOperData {
    int rank = 0;
    std::vector<UPoly<S>> sections;
    std::vector<S> xi;
    UPoly<S> lambda = UPoly<S>(S(1));
    S q = S(1);
    UPoly<S> gauge = UPoly<S>(S(1));

    int size() const { return rank + 1; }
};

// det[xi_i^j s_i(q^j z)], i over rows (0-based), j = 0..|rows|-1
template <class S>
UPoly<S> casoratian(const QOperData<S>& d, const std::vector<int>& rows);

// det[(q xi_i)^j] over the same rows.
template <class S>
S twist_vandermonde(const QOperData<S>& d, const std::vector<int>& rows);

// D_k: Casoratian of the last k rows, 1 <= k <= r+1.
template <class S>
UPoly<S> flag_determinant(const QOperData<S>& d, int k);

// Rows of Q_j^+ (last j) and Q_j^- (row r+1-j, 1-based, with the last j-1).
std::vector<int> plus_rows(int rank, int j);
std::vector<int> minus_rows(int rank, int j);

template <class S>
struct QPair {
    UPoly<S> plus, minus;
};

// Minor over Vandermonde; F = 1 in the degree-one specialization.
template <class S>
QPair<S> q_polynomials(const QOperData<S>& d, int j);

// Twist pair (eta_a, eta_b) entering node k.
template <class S>
std::pair<S, S> node_twists(const QOperData<S>& d, int k);

// W_k: gauge factor prod_{j<k} f(q^j z), times Lambda at k = r+1.
template <class S>
UPoly<S> wronskian(const QOperData<S>& d, int k);

template <class S>
struct QQNode {
    UPoly<S> residual;  // lhs - c rhs
    S constant = S(0);  // fitted c, from leading coefficients
    double relative = 0;
    bool degenerate_twist = false;
};

// eta_b Q+(qz) Q-(z) - eta_a Q+(z) Q-(qz) - c (eta_b - eta_a) Lambda_k(z) Q+_{k-1}(qz) Q+_{k+1}(z)
// with monic Q's, Q_0 = Q_{r+1} = 1, Lambda_r = Lambda and Lambda_k = 1 otherwise.
template <class S>
std::vector<QQNode<S>> qq_residual(const QOperData<S>& d);

template <class S>
struct WronskianReport {
    int k = 0;
    UPoly<S> v;         // monic remaining factor
    S beta = S(0);
    double remainder = 0; // relative size of det mod W_k
    bool divisible = false;
};

// D_k = beta_k W_k V_k with V_k monic; throws NotDivisible when W_k does not divide.
template <class S>
WronskianReport<S> wronskian_factorization_check(const QOperData<S>& d, int k, double tol = 1e-9);

using cplx = std::complex<double>;

struct BetheConfiguration {
    std::vector<std::vector<cplx>> roots; // per node 1..r
    std::vector<cplx> xi;                 // r+1 twists
    std::vector<CPoly> lambda;            // Lambda_1..Lambda_r
};

struct BetheRoot {
    int node = 0;
    cplx root;
    double relative = 0;
};

// Pole-cleared residual of the Bethe equation at each root, relative to its two terms.
std::vector<BetheRoot> bethe_residual(const BetheConfiguration& c, cplx q);

// Roots of the Q_k^+ for k = 1..r, with Lambda_r = Lambda.
BetheConfiguration bethe_configuration(const QOperData<cplx>& d);

// Oper data with s_i = z - p_i and Lambda = prod (z - a_i).
QOperData<cplx> oper_from_momenta(const std::vector<cplx>& xi, const std::vector<cplx>& a,
                                  const std::vector<cplx>& p, cplx q);

struct QOperReport {
    double d_check = 0; // relative distance of D_{r+1} from the line through Lambda
    cplx d_constant;
    std::vector<double> qq_residuals;  // per node
    std::vector<double> bethe_residuals; // per root
    std::vector<cplx> beta;             // beta_1..beta_{r+1}
    bool pass(double d_tol, double qq_tol, double bethe_tol) const;
};

QOperReport qoper_verify(const QOperData<cplx>& d);

} // namespace integra
