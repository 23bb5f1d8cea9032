#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "integra/shift/operator.hpp"

namespace integra {

enum class FrameTag { Magnetic, Electric };

// One coupling t covers the paper's three specializations:
// magnetic classical t = q^-1, electric classical t = q, K-theory t = hbar.
struct TRSFrame {
    FrameTag tag = FrameTag::Magnetic;
    std::vector<VarId> coords;
    LaurentPolynomial coupling; // a monomial value
    Monomial base;              // shift base, normally q

    std::size_t rank() const { return coords.size(); }
};

TRSFrame magnetic_frame(int n, const LaurentPolynomial& coupling);
TRSFrame electric_frame(int n, const LaurentPolynomial& coupling);
// Coupling given by a registry variable name ("t", "hbar", ...).
TRSFrame magnetic_frame(int n, const std::string& coupling);

// sum_{|I|=k} prod_{i in I, j notin I} (t c_i - c_j)/(c_i - c_j) prod_{m in I} P_m
ShiftOperator<RationalFunction> trs_hamiltonian(const TRSFrame& frame, int k);

// Coefficient of P^I in H_k (I given as a 0/1 mask).
RationalFunction trs_coefficient(const TRSFrame& frame, const std::vector<int>& mask);

std::vector<std::vector<int>> subsets(int n, int k);

using cplx = std::complex<double>;
using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;

// Numeric tier.
cplx trs_value(const VectorC& c, const VectorC& p, cplx t, int k);
// Gradient of trs_value in p.
VectorC trs_gradient(const VectorC& c, const VectorC& p, cplx t, int k);
cplx elementary(const VectorC& a, int k);

} // namespace integra
