#include "metrics/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decoy::metrics {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

void check_nonempty(const std::vector<Vec3>& a, const std::vector<Vec3>& b, const char* what) {
    require(!a.empty() && !b.empty(), Errc::invalid_argument,
            std::string(what) + ": empty sequence");
}

} // namespace

DtwResult dtw(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    check_nonempty(a, b, "dtw");
    int n = int(a.size()), m = int(b.size());
    // D[i][j] = best cost aligning a[0..i) with b[0..j)
    std::vector<std::vector<double>> D(n + 1, std::vector<double>(m + 1, INF));
    D[0][0] = 0.0;
    for(int i = 1; i <= n; ++i) {
        for(int j = 1; j <= m; ++j) {
            double d = dist(a[i - 1], b[j - 1]);
            D[i][j] = d + std::min({D[i - 1][j - 1], D[i - 1][j], D[i][j - 1]});
        }
    }
    // Path length via traceback; diagonal preferred on ties so the reported
    // normalization is deterministic.
    int i = n, j = m, steps = 1;
    while(i > 1 || j > 1) {
        double diag = (i > 1 && j > 1) ? D[i - 1][j - 1] : INF;
        double up = i > 1 ? D[i - 1][j] : INF;
        double left = j > 1 ? D[i][j - 1] : INF;
        if(diag <= up && diag <= left) {
            --i;
            --j;
        } else if(up <= left) {
            --i;
        } else {
            --j;
        }
        ++steps;
    }
    DtwResult res;
    res.cost = D[n][m];
    res.path_len = steps;
    return res;
}

double frechet(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    check_nonempty(a, b, "frechet");
    int n = int(a.size()), m = int(b.size());
    std::vector<std::vector<double>> F(n, std::vector<double>(m, 0.0));
    for(int i = 0; i < n; ++i) {
        for(int j = 0; j < m; ++j) {
            double d = dist(a[i], b[j]);
            double reach;
            if(i == 0 && j == 0)
                reach = d;
            else if(i == 0)
                reach = std::max(F[0][j - 1], d);
            else if(j == 0)
                reach = std::max(F[i - 1][0], d);
            else
                reach = std::max(std::min({F[i - 1][j], F[i][j - 1], F[i - 1][j - 1]}), d);
            F[i][j] = reach;
        }
    }
    return F[n - 1][m - 1];
}

double mean_euclidean(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    check_nonempty(a, b, "mean_euclidean");
    require(a.size() == b.size(), Errc::invalid_argument,
            "mean_euclidean: length mismatch (resample first)");
    double acc = 0.0;
    for(std::size_t i = 0; i < a.size(); ++i)
        acc += dist(a[i], b[i]);
    return acc / double(a.size());
}

double rmse(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    check_nonempty(a, b, "rmse");
    require(a.size() == b.size(), Errc::invalid_argument,
            "rmse: length mismatch (resample first)");
    double acc = 0.0;
    for(std::size_t i = 0; i < a.size(); ++i) {
        double d = dist(a[i], b[i]);
        acc += d * d;
    }
    return std::sqrt(acc / double(a.size()));
}

double wasserstein1d(std::vector<double> p, std::vector<double> q) {
    require(!p.empty() && !q.empty(), Errc::invalid_argument, "wasserstein1d: empty sample set");
    std::sort(p.begin(), p.end());
    std::sort(q.begin(), q.end());
    // Piecewise-constant quantile functions; integrate |Fp^-1 - Fq^-1| over
    // [0,1] by sweeping the merged breakpoints i/n and j/m.
    std::size_t i = 0, j = 0;
    double pos = 0.0, acc = 0.0;
    while(i < p.size() && j < q.size()) {
        double next_p = double(i + 1) / double(p.size());
        double next_q = double(j + 1) / double(q.size());
        double next = std::min(next_p, next_q);
        acc += (next - pos) * std::abs(p[i] - q[j]);
        pos = next;
        if(next_p <= next)
            ++i;
        if(next_q <= next)
            ++j;
    }
    return acc;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), Errc::invalid_argument, "pearson: length mismatch");
    require(x.size() >= 2, Errc::invalid_argument, "pearson: need at least 2 samples");
    double mx = 0.0, my = 0.0;
    for(std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(x.size());
    my /= double(x.size());
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for(std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    require(sxx > 0.0 && syy > 0.0, Errc::validation,
            "pearson: correlation undefined for a constant series");
    return sxy / std::sqrt(sxx * syy);
}

double mae(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), Errc::invalid_argument, "mae: length mismatch");
    require(!x.empty(), Errc::invalid_argument, "mae: empty input");
    double acc = 0.0;
    for(std::size_t i = 0; i < x.size(); ++i)
        acc += std::abs(x[i] - y[i]);
    return acc / double(x.size());
}

double outcome_agreement(const std::vector<std::pair<int, int>>& winners) {
    require(!winners.empty(), Errc::invalid_argument, "outcome_agreement: no outcome pairs");
    int same = 0;
    for(const auto& [a, b] : winners)
        if(a == b)
            ++same;
    return double(same) / double(winners.size());
}

} // namespace decoy::metrics
