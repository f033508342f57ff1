#pragma once
// Globally adaptive Gauss-Kronrod (7/15) core, generic over the working
// floating type so the cancellation-heavy ergodic sums can run in long double.

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace igsrelay::detail {

// Kronrod abscissae (positive half, descending) and weights; Gauss weights
// belong to the odd-indexed Kronrod nodes.
inline constexpr std::array<long double, 8> kXgk = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr std::array<long double, 8> kWgk = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr std::array<long double, 4> kWg = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class T>
struct Segment {
    T lo;
    T hi;
    T value;
    T error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class T, class F>
Segment<T> gauss_kronrod15(F& f, T lo, T hi) {
    const T center = T(0.5) * (lo + hi);
    const T half = T(0.5) * (hi - lo);
    const T fc = f(center);
    T kronrod = fc * static_cast<T>(kWgk[7]);
    T gauss = fc * static_cast<T>(kWg[3]);
    for (int j = 0; j < 7; ++j) {
        const T dx = half * static_cast<T>(kXgk[j]);
        const T sum = f(center - dx) + f(center + dx);
        kronrod += static_cast<T>(kWgk[j]) * sum;
        if (j % 2 == 1) {
            gauss += static_cast<T>(kWg[j / 2]) * sum;
        }
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

template <class T>
struct AdaptiveResult {
    T value = 0;
    T abs_error = 0;
    int evaluations = 0;
    int subdivisions = 0;
    bool converged = false;
};

/// Bisects the segment with the largest error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|).
template <class T, class F>
AdaptiveResult<T> adaptive_gk(F&& f, T lo, T hi, T rel_tol, T abs_tol, int max_subdivisions) {
    AdaptiveResult<T> out;
    if (lo == hi) {
        out.converged = true;
        return out;
    }
    int evals = 0;
    auto counted = [&](T x) {
        ++evals;
        return f(x);
    };

    std::priority_queue<Segment<T>> heap;
    Segment<T> first = gauss_kronrod15(counted, lo, hi);
    T total = first.value;
    T error = first.error;
    heap.push(first);
    int subdivisions = 1;

    while (error > std::max(abs_tol, rel_tol * std::abs(total)) && subdivisions < max_subdivisions) {
        Segment<T> worst = heap.top();
        heap.pop();
        const T mid = T(0.5) * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // Interval can no longer be split at this precision.
            heap.push(worst);
            break;
        }
        Segment<T> left = gauss_kronrod15(counted, worst.lo, mid);
        Segment<T> right = gauss_kronrod15(counted, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum, smallest error first, to shed the drift of the running updates.
    std::vector<Segment<T>> segments;
    segments.reserve(heap.size());
    while (!heap.empty()) {
        segments.push_back(heap.top());
        heap.pop();
    }
    total = 0;
    error = 0;
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        total += it->value;
        error += it->error;
    }

    out.value = total;
    out.abs_error = error;
    out.evaluations = evals;
    out.subdivisions = subdivisions;
    out.converged = std::isfinite(total) && error <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

} // namespace igsrelay::detail
