#include "esdg/limiter.hpp"

#include <algorithm>
#include <cmath>

namespace esdg {

namespace {

double eval_modal(std::span<const double> c, int k, double xi) {
    const auto leg = legendre_eval(k, xi);
    double v = 0.0;
    for (int i = 0; i <= k; ++i)
        v += c[static_cast<std::size_t>(i)] * leg.values[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace

double cell_min(std::span<const double> c, int degree) {
    double best = std::min(eval_modal(c, degree, -1.0), eval_modal(c, degree, 1.0));
    if (degree == 2) {
        // p' = c1 + 3 c2 xi
        const double c1 = c[1], c2 = c[2];
        if (c2 != 0.0) {
            const double xi = -c1 / (3.0 * c2);
            if (xi > -1.0 && xi < 1.0) best = std::min(best, eval_modal(c, degree, xi));
        }
    } else if (degree == 3) {
        // p' = (c1 - 3 c3/2) + 3 c2 xi + (15 c3/2) xi^2
        const double a = 7.5 * c[3];
        const double b = 3.0 * c[2];
        const double c0 = c[1] - 1.5 * c[3];
        if (a == 0.0) {
            if (b != 0.0) {
                const double xi = -c0 / b;
                if (xi > -1.0 && xi < 1.0) best = std::min(best, eval_modal(c, degree, xi));
            }
        } else {
            const double disc = b * b - 4.0 * a * c0;
            if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                for (const double xi : {(-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a)})
                    if (xi > -1.0 && xi < 1.0) best = std::min(best, eval_modal(c, degree, xi));
            }
        }
    }
    return best;
}

void reconstruct_positive_inplace(DGField& field, const LimiterConfig& config,
                                  std::vector<LimiterEvent>* events) {
    if (!config.enabled) return;
    const int k = field.degree;
    const int nm = field.n_modes();
    const double delta = config.delta;

    for (int j = 0; j < field.n_cells(); ++j) {
        double* c = field.cell_data(j);
        std::span<const double> cs(c, static_cast<std::size_t>(nm));

        if (config.skip_zero_cells) {
            bool all_zero = true;
            for (int i = 0; i < nm; ++i)
                if (c[i] != 0.0) {
                    all_zero = false;
                    break;
                }
            if (all_zero) continue;
        }

        double mn = cell_min(cs, k);
        if (mn >= delta) continue;

        const double avg = c[0];
        if (avg <= delta) {
            // Averages within round-off of the floor (e.g. cells ahead of a
            // degenerate front) are flattened without being treated as a
            // positivity failure; the mass perturbation is at machine level.
            const double roundoff = 1e-13 * std::max(1.0, std::abs(avg));
            if (avg >= delta - roundoff) {
                c[0] = std::max(avg, delta);
                for (int i = 1; i < nm; ++i) c[i] = 0.0;
                if (events) events->push_back({LimiterEvent::Kind::Flatten, j});
                continue;
            }
            if (config.fallback == LimiterConfig::Fallback::Error)
                throw LimiterFailure("reconstruct_positive: cell average at or below delta in cell " +
                                         std::to_string(j),
                                     j);
            const double flat = std::max(avg, delta);
            if (events) {
                events->push_back({avg < delta ? LimiterEvent::Kind::ConservationBreak
                                               : LimiterEvent::Kind::Flatten,
                                   j});
            }
            c[0] = flat;
            for (int i = 1; i < nm; ++i) c[i] = 0.0;
            continue;
        }

        // Linear squeeze toward the average; a second pass absorbs rare
        // round-off undershoot so the floor holds exactly.
        for (int pass = 0; pass < 8 && mn < delta; ++pass) {
            double theta = (avg - delta) / (avg - mn);
            if (pass > 0) theta *= 1.0 - 1e-14;
            for (int i = 1; i < nm; ++i) c[i] *= theta;
            mn = cell_min(cs, k);
        }
        if (events) events->push_back({LimiterEvent::Kind::Squeeze, j});
    }
}

DGField reconstruct_positive(const DGField& field, const LimiterConfig& config,
                             std::vector<LimiterEvent>* events) {
    DGField out = field;
    reconstruct_positive_inplace(out, config, events);
    return out;
}

}  // namespace esdg
