// Two well-separated Gaussian clouds: the region count stays at 2 however
// many points are drawn, so the shattering estimate stays flat while the
// Sauer-Shelah bound grows with n.

#include "shatter/combinatorics.hpp"
#include "shatter/dataset.hpp"
#include "shatter/equivalence.hpp"
#include "shatter/growth.hpp"
#include "shatter/separability.hpp"
#include "shatter/synth.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>

int main() {
    const auto data = shatter::normalize_unit_cube(shatter::synth::gaussians({}, 42));
    const auto curve = shatter::sample_growth_curve(data, shatter::default_schedule(data.size(), 2), 10, 42);
    const auto h = shatter::fit_growth_model(curve);

    std::cout << std::setw(6) << "n" << std::setw(10) << "regions" << std::setw(20) << "sauer-shelah(n,3)"
              << std::setw(18) << "path-ii estimate" << '\n';
    for (const auto& s : curve.samples) {
        const auto hb = shatter::estimate_hyperplanes(h.evaluate(s.n), data.dim(), s.n);
        const auto est = shatter::shattering_bounds(hb, data.dim(), 2, static_cast<std::uint64_t>(std::ceil(h.evaluate(s.n))),
                                                    shatter::region_path::regions);
        std::cout << std::setw(6) << s.n << std::setw(10) << s.mean_regions << std::setw(20)
                  << shatter::sauer_shelah(s.n, 3) << std::setw(18) << *est.upper.exact << '\n';
    }
    const auto hb = shatter::estimate_hyperplanes(h.evaluate(data.size()), data.dim(), data.size());
    std::cout << "family: " << shatter::to_string(h.family) << ", hyperplanes: best " << hb.lower << ", worst "
              << hb.upper << '\n';
}
