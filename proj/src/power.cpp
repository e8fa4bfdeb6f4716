#include "coopsim/power.hpp"

#include <cmath>

#include "coopsim/errors.hpp"

namespace coopsim::power {

PowerAllocation equal_power(std::size_t n_sym, std::size_t n_relays, std::size_t n_slots,
                            double total_power) {
    if (n_sym == 0 || total_power <= 0.0) throw Error("equal_power: bad arguments");
    PowerAllocation p;
    const double src = std::sqrt(total_power / static_cast<double>(n_sym * (1 + n_relays)));
    p.sd.assign(n_sym, src);
    p.sr.assign(n_relays, std::vector<cd>(n_sym, src));
    if (n_relays > 0) {
        const double rel =
            std::sqrt(total_power / static_cast<double>(n_sym * n_relays * n_slots));
        p.rd.assign(n_relays, std::vector<cd>(n_slots, rel));
    }
    return p;
}

namespace {

double group_sum(const std::vector<cd>& v) {
    double s = 0.0;
    for (const cd& z : v) s += std::norm(z);
    return s;
}

void scale_group(std::vector<cd>& v, double f) {
    for (cd& z : v) z *= f;
}

}  // namespace

double source_group_power(const PowerAllocation& p) {
    double s = group_sum(p.sd);
    for (const auto& v : p.sr) s += group_sum(v);
    return s;
}

double relay_group_power(const PowerAllocation& p, const std::vector<std::size_t>& reliable) {
    double s = 0.0;
    for (std::size_t k : reliable) s += group_sum(p.rd.at(k));
    return static_cast<double>(p.sd.size()) * s;
}

void project(PowerAllocation& p, const std::vector<std::size_t>& reliable, double total_power) {
    if (total_power <= 0.0) throw Error("project: total_power must be positive");
    const double s1 = source_group_power(p);
    if (s1 <= 0.0) throw DegenerateGroup("project: source group has zero power");
    const double f1 = std::sqrt(total_power / s1);
    scale_group(p.sd, f1);
    for (auto& v : p.sr) scale_group(v, f1);

    if (!reliable.empty()) {
        const double s2 = relay_group_power(p, reliable);
        if (s2 <= 0.0) throw DegenerateGroup("project: relay group has zero power");
        const double f2 = std::sqrt(total_power / s2);
        for (std::size_t k : reliable) scale_group(p.rd.at(k), f2);
    }
}

CVec stack_coefficients(const PowerAllocation& p, std::size_t j,
                        const std::vector<std::size_t>& reliable) {
    CVec a;
    a.reserve(1 + reliable.size() * (p.rd.empty() ? 0 : p.rd[0].size()));
    a.push_back(p.sd.at(j));
    for (std::size_t k : reliable) {
        for (const cd& z : p.rd.at(k)) a.push_back(z);
    }
    return a;
}

}  // namespace coopsim::power
