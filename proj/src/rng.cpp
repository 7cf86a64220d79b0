#include "sphmult/rng.hpp"

#include <cmath>

namespace sphmult {

double Rng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u = next_unit();
    while (u <= 0.0) u = next_unit();
    const double v = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
}

CoeffTable random_band_limited(Rng& rng, int K) {
    CoeffTable c(K);
    for (double& x : c.v) x = rng.next_gaussian();
    return c;
}

} // namespace sphmult
