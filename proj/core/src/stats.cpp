#include "simbias/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "simbias/error.hpp"

namespace simbias::stats {

double pearson_p_value(double r, std::size_t n) {
    if (n < 3) throw InvalidArgument("analysis", "p-value needs at least 3 points");
    const double ar = std::min(1.0, std::abs(r));
    if (ar >= 1.0) return 0.0;
    const double df = static_cast<double>(n - 2);
    const double t = ar * std::sqrt(df / (1.0 - ar * ar));
    const boost::math::students_t dist(df);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, t)), 0.0, 1.0);
}

std::optional<PearsonResult> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("analysis", "pearson: samples differ in length");
    const std::size_t n = x.size();
    if (n < 3) throw InvalidArgument("analysis", "pearson: need at least 3 points");

    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return PearsonResult{r, pearson_p_value(r, n), n};
}

double Concordance::gamma() const noexcept {
    const auto untied = concordant + discordant;
    if (untied == 0) return 0.0;
    return (static_cast<double>(concordant) - static_cast<double>(discordant)) / static_cast<double>(untied);
}

namespace {

// Fenwick tree over y-ranks.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
    void add(std::size_t i) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
    }
    // Number of inserted ranks < i.
    std::uint64_t below(std::size_t i) const {
        std::uint64_t s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::uint64_t> tree_;
};

}  // namespace

Concordance concordance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("analysis", "concordance: samples differ in length");
    const std::size_t n = x.size();

    std::vector<double> ys(y.begin(), y.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        rank[i] = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y[i]) - ys.begin());
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    Concordance out;
    Fenwick seen(ys.size());
    std::uint64_t inserted = 0;
    std::size_t g = 0;
    while (g < n) {
        std::size_t h = g;
        while (h < n && x[order[h]] == x[order[g]]) ++h;
        // Every earlier element has strictly smaller x.
        for (std::size_t t = g; t < h; ++t) {
            const auto r = rank[order[t]];
            const auto lower = seen.below(r);
            const auto lower_or_equal = seen.below(r + 1);
            out.concordant += lower;
            out.discordant += inserted - lower_or_equal;
        }
        for (std::size_t t = g; t < h; ++t) seen.add(rank[order[t]]);
        inserted += h - g;
        g = h;
    }
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
    out.tied = pairs - out.concordant - out.discordant;
    return out;
}

}  // namespace simbias::stats
