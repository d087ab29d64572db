#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cf {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Real packing of C^n: x = (p_1..p_n, q_1..q_n); points of R^2n x S^1 append t.
inline CVec to_complex(const RVec& x) {
    const long n = x.size() / 2;
    CVec z(n);
    for (long j = 0; j < n; ++j) z[j] = Cplx(x[j], x[n + j]);
    return z;
}

inline RVec to_real(const CVec& z) {
    const long n = z.size();
    RVec x(2 * n);
    for (long j = 0; j < n; ++j) {
        x[j] = z[j].real();
        x[n + j] = z[j].imag();
    }
    return x;
}

// t stored mod 1; reduce before trig evaluation to avoid drift.
inline double mod1(double t) {
    double r = t - std::floor(t);
    return (r >= 1.0) ? 0.0 : r;
}

// Thread cap: CONTACTFORGE_THREADS, else hardware concurrency.
int thread_count();

// Runs fn(begin, end) over [0, total) in contiguous chunks, possibly in
// parallel. Results must be merged deterministically by the caller (chunk
// outputs are indexed by chunk number).
void parallel_chunks(long total,
                     const std::function<void(long, long, int)>& fn,
                     int* chunks_used = nullptr);

// Deterministic argmin carrier: ties broken by lowest grid index.
struct MinWitness {
    double value = std::numeric_limits<double>::infinity();
    long index = -1;
    void update(double v, long i) {
        if (v < value || (v == value && (index < 0 || i < index))) {
            value = v;
            index = i;
        }
    }
    void merge(const MinWitness& o) {
        if (o.index < 0) return;
        if (o.value < value || (o.value == value && (index < 0 || o.index < index)))
            *this = o;
    }
};

}  // namespace cf
