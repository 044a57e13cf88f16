#pragma once

#include <cmath>
#include <map>
#include <vector>

namespace segen::testing {

// upper regularized incomplete gamma Q(a, x), series/continued-fraction form
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) return 1.0;
    if (x == 0.0) return 1.0;
    double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // series for P(a, x), then Q = 1 - P
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-12) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    // Lentz continued fraction for Q(a, x)
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-12) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

inline double chi2_sf(double stat, int dof) {
    return gamma_q(0.5 * dof, 0.5 * stat);
}

// two-sample chi-square homogeneity test over categorical outcome counts;
// returns the p-value
template <typename Key>
double chi2_two_sample_pvalue(const std::map<Key, std::size_t>& a,
                              const std::map<Key, std::size_t>& b) {
    std::map<Key, std::pair<double, double>> merged;
    double na = 0.0, nb = 0.0;
    for (const auto& [k, v] : a) {
        merged[k].first += static_cast<double>(v);
        na += static_cast<double>(v);
    }
    for (const auto& [k, v] : b) {
        merged[k].second += static_cast<double>(v);
        nb += static_cast<double>(v);
    }
    double stat = 0.0;
    int dof = -1;
    for (const auto& [k, counts] : merged) {
        double row = counts.first + counts.second;
        double ea = row * na / (na + nb);
        double eb = row * nb / (na + nb);
        if (ea > 0.0) stat += (counts.first - ea) * (counts.first - ea) / ea;
        if (eb > 0.0) stat += (counts.second - eb) * (counts.second - eb) / eb;
        ++dof;
    }
    if (dof < 1) return 1.0;
    return chi2_sf(stat, dof);
}

}  // namespace segen::testing
