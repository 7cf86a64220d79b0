#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace sphmult {

// Neumaier-compensated accumulator. Cross-degree reductions go through this
// so that parallel-over-output and sequential evaluations agree to the bit.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

inline double compensated_sum(std::span<const double> xs) {
    NeumaierSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

} // namespace sphmult
