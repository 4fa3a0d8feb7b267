#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mbred/errors.hpp"
#include "mbred/tolerances.hpp"

namespace mbred {

// Abstract sample points are opaque labels with exact equality; pure points
// bring their own gauge-invariant point_equal overload (projective.hpp).
inline bool point_equal(const std::string& a, const std::string& b) { return a == b; }

/// Finitely supported probability measure over labeled points, kept in
/// canonical form: no duplicate points under the point type's equality,
/// weights above `weight_floor`, total weight 1.
template <typename Point>
class DiscreteMeasure {
public:
    struct Entry {
        Point point;
        double weight;
    };

    explicit DiscreteMeasure(std::vector<Entry> support) {
        for (const Entry& e : support) {
            if (e.weight < 0.0) {
                throw ValidationError("DiscreteMeasure: negative weight");
            }
        }
        double total = 0.0;
        for (const Entry& e : support) total += e.weight;
        if (std::abs(total - 1.0) > tolerances().weight_tol) {
            throw ValidationError("DiscreteMeasure: weights sum to " + std::to_string(total) +
                                  ", expected 1");
        }
        support_ = merge(std::move(support));
        prune_and_renormalize();
        if (support_.empty()) {
            throw ValidationError("DiscreteMeasure: empty support after pruning");
        }
    }

    static DiscreteMeasure dirac(Point p) {
        return DiscreteMeasure(std::vector<Entry>{{std::move(p), 1.0}});
    }

    const std::vector<Entry>& support() const { return support_; }
    int size() const { return static_cast<int>(support_.size()); }

    // Weight of the (unique) support point equal to p, or 0 when absent.
    double weight_at(const Point& p) const {
        for (const Entry& e : support_) {
            if (point_equal(e.point, p)) return e.weight;
        }
        return 0.0;
    }

private:
    static std::vector<Entry> merge(std::vector<Entry> entries) {
        std::vector<Entry> merged;
        for (Entry& e : entries) {
            bool found = false;
            for (Entry& m : merged) {
                if (point_equal(m.point, e.point)) {
                    m.weight += e.weight;
                    found = true;
                    break;
                }
            }
            if (!found) merged.push_back(std::move(e));
        }
        return merged;
    }

    void prune_and_renormalize() {
        const double floor = tolerances().weight_floor;
        support_.erase(std::remove_if(support_.begin(), support_.end(),
                                      [floor](const Entry& e) { return e.weight < floor; }),
                       support_.end());
        double total = 0.0;
        for (const Entry& e : support_) total += e.weight;
        if (total > 0.0) {
            for (Entry& e : support_) e.weight /= total;
        }
    }

    std::vector<Entry> support_;
};

template <typename Point>
DiscreteMeasure<Point> dirac(Point p) {
    return DiscreteMeasure<Point>::dirac(std::move(p));
}

// alpha*mu + (1-alpha)*nu, restored to canonical form.
template <typename Point>
DiscreteMeasure<Point> mix(double alpha, const DiscreteMeasure<Point>& mu,
                           const DiscreteMeasure<Point>& nu) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw ValidationError("mix: alpha must lie in [0, 1]");
    }
    std::vector<typename DiscreteMeasure<Point>::Entry> entries;
    entries.reserve(mu.support().size() + nu.support().size());
    for (const auto& e : mu.support()) entries.push_back({e.point, alpha * e.weight});
    for (const auto& e : nu.support()) entries.push_back({e.point, (1.0 - alpha) * e.weight});
    return DiscreteMeasure<Point>(std::move(entries));
}

// Integral of f against mu; f must be defined at every support point.
template <typename Point, typename F>
double expectation(const DiscreteMeasure<Point>& mu, F&& f) {
    double acc = 0.0;
    for (const auto& e : mu.support()) acc += e.weight * f(e.point);
    return acc;
}

// Half the total-variation norm of mu - nu, so values land in [0, 1].
template <typename Point>
double tv_distance(const DiscreteMeasure<Point>& mu, const DiscreteMeasure<Point>& nu) {
    double acc = 0.0;
    for (const auto& e : mu.support()) acc += std::abs(e.weight - nu.weight_at(e.point));
    // Points of nu with no partner in mu.
    for (const auto& e : nu.support()) {
        if (mu.weight_at(e.point) == 0.0) acc += e.weight;
    }
    return 0.5 * acc;
}

// Image measure mu . i^{-1}: weights of points with equal images are summed.
template <typename Point, typename MapFn>
auto pushforward(const DiscreteMeasure<Point>& mu, MapFn&& map)
    -> DiscreteMeasure<std::decay_t<decltype(map(mu.support().front().point))>> {
    using Image = std::decay_t<decltype(map(mu.support().front().point))>;
    std::vector<typename DiscreteMeasure<Image>::Entry> entries;
    entries.reserve(mu.support().size());
    for (const auto& e : mu.support()) entries.push_back({map(e.point), e.weight});
    return DiscreteMeasure<Image>(std::move(entries));
}

}  // namespace mbred
