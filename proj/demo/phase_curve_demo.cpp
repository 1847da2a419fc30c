#include <cstdio>

#include <wellscat/wellscat.hpp>

/// Prints a phase branch for the unit well and its Levinson summary.
int main() {
    using namespace wellscat;
    const auto well = single_well(1.0);
    const auto curve = phase_curve(0, 3, 100.0, well, 30.0, 1e-3);
    std::printf("# %s  chi_hash=%s\n", version_string, chi_definition_hash().c_str());
    std::printf("# points=%zu  k_max_used=%s\n", curve.points.size(),
                fmt_double(curve.k_max_used).c_str());
    for (std::size_t i = 0; i < curve.points.size(); i += curve.points.size() / 12 + 1)
        std::printf("k=%-12s delta=%s\n", fmt_double(curve.points[i].k).c_str(),
                    fmt_double(curve.points[i].delta).c_str());
    const auto rep = levinson_check(0, 3, 100.0, well);
    std::printf("winding=%s  n_bound=%d  half_bound=%d  residual=%s  pass=%d\n",
                fmt_double(rep.winding).c_str(), rep.n_bound, rep.half_bound ? 1 : 0,
                fmt_double(rep.residual).c_str(), rep.pass ? 1 : 0);
    return rep.pass ? 0 : 1;
}
