#pragma once

#include <cstdint>

#include "integra/trs/lax.hpp"

namespace integra {

struct ClassicalPoint {
    VectorC coords;
    VectorC momenta;
};

struct DualityOptions {
    double tol = 1e-10;
    double dedup = 1e-6;
    int max_solutions = -1; // default N!
    std::uint64_t seed = 0;
    int random_starts = 400;
};

struct DualitySolution {
    ClassicalPoint point;
    double residual = 0;
};

struct DualityResult {
    std::vector<DualitySolution> solutions;
    int expected = 0;
    bool complete() const { return static_cast<int>(solutions.size()) == expected; }
    double max_residual() const;
};

// Solves lax_hamiltonian(xi, p, q, k) = e_k(a), k = 1..N, for p.
DualityResult duality_solve(const VectorC& xi, const VectorC& a, cplx q, const DualityOptions& opt = {});
double duality_residual(const VectorC& xi, const VectorC& a, cplx q, const VectorC& p);

struct MirrorReport {
    DualityResult electric;   // coordinates a, targets xi, shift 1/q
    DualityResult remirrored; // mirror applied twice
    bool counts_match = false;
    double involution_error = 0; // remirrored vs original solution sets
    bool pass = false;
};

MirrorReport mirror_check(const DualityResult& magnetic, const VectorC& a, const VectorC& xi, cplx q,
                          const DualityOptions& opt = {});

// Largest distance from a solution of one set to its nearest partner in the other.
double solution_set_distance(const DualityResult& x, const DualityResult& y);

} // namespace integra
