#include "pieces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ulab::detail {

std::vector<Piece> split_at_kinks(const FunctionSpec& f, const Interval& interval) {
    const auto& traits = f.traits();
    std::vector<double> cuts{interval.lo()};
    for (double k : f.kinks()) {
        if (k > interval.lo() && k < interval.hi()) cuts.push_back(k);
    }
    cuts.push_back(interval.hi());

    const bool sing_lo = traits.singular_at_minus_one && interval.lo() == -1.0;
    const bool sing_hi = traits.singular_at_plus_one && interval.hi() == 1.0;
    if (sing_lo && sing_hi && cuts.size() == 2) cuts.insert(cuts.begin() + 1, 0.0);

    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        pieces.push_back({cuts[i], cuts[i + 1], sing_lo && cuts[i] == -1.0, sing_hi && cuts[i + 1] == 1.0});
    }
    if (pieces.empty()) throw NumericalError("integration interval collapsed under floating point");
    return pieces;
}

namespace {

std::vector<double> sign_changes(const FunctionSpec& f, double lo, double hi, int hint) {
    const int samples = std::clamp(8 * (hint + 2), 64, 8192);
    std::vector<double> roots;
    double x_prev = lo;
    double f_prev = f(lo);
    for (int j = 1; j <= samples; ++j) {
        const double x = 0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(std::numbers::pi * j / samples);
        const double fx = f(x);
        if ((f_prev < 0.0 && fx > 0.0) || (f_prev > 0.0 && fx < 0.0)) {
            double l = x_prev;
            double r = x;
            double fl = f_prev;
            for (int it = 0; it < 100 && r - l > 4e-16 * (1.0 + std::abs(l)); ++it) {
                const double m = 0.5 * (l + r);
                const double fm = f(m);
                if (fm == 0.0) {
                    l = r = m;
                    break;
                }
                if ((fm < 0.0) == (fl < 0.0)) {
                    l = m;
                    fl = fm;
                } else {
                    r = m;
                }
            }
            const double root = 0.5 * (l + r);
            if (root > lo && root < hi) roots.push_back(root);
        }
        if (fx != 0.0) {
            x_prev = x;
            f_prev = fx;
        }
    }
    return roots;
}

}  // namespace

std::vector<Piece> split_at_sign_changes(const FunctionSpec& f, const std::vector<Piece>& pieces) {
    std::vector<Piece> out;
    for (const auto& piece : pieces) {
        // sampling right next to a singular end is pointless; the graded rule handles it
        double lo = piece.lo;
        double hi = piece.hi;
        const double margin = 1e-6 * (hi - lo);
        if (piece.singular_lo) lo += margin;
        if (piece.singular_hi) hi -= margin;
        double start = piece.lo;
        bool first = true;
        for (double root : sign_changes(f, lo, hi, f.traits().degree_hint)) {
            if (!(root > start)) continue;
            out.push_back({start, root, first && piece.singular_lo, false});
            start = root;
            first = false;
        }
        out.push_back({start, piece.hi, first && piece.singular_lo, piece.singular_hi});
    }
    return out;
}

}  // namespace ulab::detail
