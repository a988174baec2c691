#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

using decoy::Vec3;

namespace testoracle {

namespace {

double pt_dist(const Vec3& p, const Vec3& q) {
    double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace

double dtw_cost(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    std::size_t n = a.size(), m = b.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> D(n + 1, std::vector<double>(m + 1, inf));
    D[0][0] = 0.0;
    for(std::size_t i = 1; i <= n; ++i)
        for(std::size_t j = 1; j <= m; ++j)
            D[i][j] = pt_dist(a[i - 1], b[j - 1]) +
                      std::min({D[i - 1][j - 1], D[i - 1][j], D[i][j - 1]});
    return D[n][m];
}

double frechet_dist(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    std::size_t n = a.size(), m = b.size();
    std::vector<std::vector<double>> F(n, std::vector<double>(m, 0.0));
    for(std::size_t i = 0; i < n; ++i) {
        for(std::size_t j = 0; j < m; ++j) {
            double d = pt_dist(a[i], b[j]);
            if(i == 0 && j == 0)
                F[i][j] = d;
            else if(i == 0)
                F[i][j] = std::max(F[i][j - 1], d);
            else if(j == 0)
                F[i][j] = std::max(F[i - 1][j], d);
            else
                F[i][j] = std::max(std::min({F[i - 1][j], F[i][j - 1], F[i - 1][j - 1]}), d);
        }
    }
    return F[n - 1][m - 1];
}

double wasserstein(std::vector<double> p, std::vector<double> q) {
    std::sort(p.begin(), p.end());
    std::sort(q.begin(), q.end());
    std::size_t n = p.size(), m = q.size();
    // Repeat every entry so both samples reach n*m points, then the quantile
    // functions line up index by index.
    std::vector<double> pe, qe;
    pe.reserve(n * m);
    qe.reserve(n * m);
    for(double v : p)
        pe.insert(pe.end(), m, v);
    for(double v : q)
        qe.insert(qe.end(), n, v);
    double total = 0.0;
    for(std::size_t i = 0; i < pe.size(); ++i)
        total += std::abs(pe[i] - qe[i]);
    return total / double(pe.size());
}

long path_frames(const decoy::waypoint::WaypointGraph& g, const std::vector<int>& path) {
    long total = 0;
    for(std::size_t i = 1; i < path.size(); ++i) {
        const decoy::waypoint::Edge* e = g.find_edge(path[i - 1], path[i]);
        if(!e)
            return -1;
        total += e->frames;
    }
    return total;
}

long shortest_frames(const decoy::waypoint::WaypointGraph& g, int a, int b) {
    const long inf = std::numeric_limits<long>::max() / 4;
    std::vector<long> d(g.node_count(), inf);
    d[std::size_t(a)] = 0;
    bool changed = true;
    while(changed) {
        changed = false;
        for(int u = 0; u < g.node_count(); ++u) {
            if(d[std::size_t(u)] == inf)
                continue;
            for(const auto& e : g.out[std::size_t(u)]) {
                long cand = d[std::size_t(u)] + e.frames;
                if(cand < d[std::size_t(e.to)]) {
                    d[std::size_t(e.to)] = cand;
                    changed = true;
                }
            }
        }
    }
    return d[std::size_t(b)] == inf ? -1 : d[std::size_t(b)];
}

int nearest_node(const decoy::waypoint::WaypointGraph& g, const Vec3& p, double wz) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for(const auto& w : g.nodes) {
        double dx = w.pos.x - p.x, dy = w.pos.y - p.y;
        double d = std::sqrt(dx * dx + dy * dy) + wz * std::abs(w.pos.z - p.z);
        if(d < best_d) {
            best_d = d;
            best = w.id;
        }
    }
    return best;
}

bool single_scc(const decoy::waypoint::WaypointGraph& g) {
    int n = g.node_count();
    if(n == 0)
        return false;
    // Reachability from node 0 along edges, then against them; both covering
    // everything is exactly one strongly connected component.
    for(int pass = 0; pass < 2; ++pass) {
        std::vector<char> seen(std::size_t(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while(!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if(pass == 0) {
                for(const auto& e : g.out[std::size_t(u)])
                    if(!seen[std::size_t(e.to)]) {
                        seen[std::size_t(e.to)] = 1;
                        stack.push_back(e.to);
                    }
            } else {
                for(int v = 0; v < n; ++v) {
                    if(seen[std::size_t(v)])
                        continue;
                    for(const auto& e : g.out[std::size_t(v)])
                        if(e.to == u) {
                            seen[std::size_t(v)] = 1;
                            stack.push_back(v);
                            break;
                        }
                }
            }
        }
        for(char s : seen)
            if(!s)
                return false;
    }
    return true;
}

decoy::nn::Vector mlp_forward(const decoy::nn::Mlp& net, const decoy::nn::Vector& x) {
    decoy::nn::Vector cur = x;
    for(const auto& layer : net.layers) {
        decoy::nn::Vector next(std::size_t(layer.W.rows), 0.0);
        for(int r = 0; r < layer.W.rows; ++r) {
            double acc = layer.b[std::size_t(r)];
            for(int c = 0; c < layer.W.cols; ++c)
                acc += layer.W(r, c) * cur[std::size_t(c)];
            switch(layer.act) {
            case decoy::nn::Act::Identity: break;
            case decoy::nn::Act::Relu: acc = acc > 0.0 ? acc : 0.0; break;
            case decoy::nn::Act::Sigmoid: acc = 1.0 / (1.0 + std::exp(-acc)); break;
            }
            next[std::size_t(r)] = acc;
        }
        cur = std::move(next);
    }
    return cur;
}

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double won = 0.0;
    long pairs = 0;
    for(std::size_t i = 0; i < scores.size(); ++i) {
        if(!labels[i])
            continue;
        for(std::size_t j = 0; j < scores.size(); ++j) {
            if(labels[j])
                continue;
            ++pairs;
            if(scores[i] > scores[j])
                won += 1.0;
            else if(scores[i] == scores[j])
                won += 0.5;
        }
    }
    return won / double(pairs);
}

double average_precision(const std::vector<double>& scores, const std::vector<int>& labels) {
    std::set<double, std::greater<double>> cuts(scores.begin(), scores.end());
    long total_pos = 0;
    for(int l : labels)
        total_pos += l;
    double ap = 0.0, prev_recall = 0.0;
    for(double t : cuts) {
        long tp = 0, predicted = 0;
        for(std::size_t i = 0; i < scores.size(); ++i) {
            if(scores[i] >= t) {
                ++predicted;
                tp += labels[i];
            }
        }
        double recall = double(tp) / double(total_pos);
        ap += (recall - prev_recall) * double(tp) / double(predicted);
        prev_recall = recall;
    }
    return ap;
}

double f1(const std::vector<double>& scores, const std::vector<int>& labels, double t) {
    long tp = 0, fp = 0, fn = 0;
    for(std::size_t i = 0; i < scores.size(); ++i) {
        if(scores[i] >= t && labels[i])
            ++tp;
        else if(scores[i] >= t)
            ++fp;
        else if(labels[i])
            ++fn;
    }
    return tp == 0 ? 0.0 : 2.0 * double(tp) / double(2 * tp + fp + fn);
}

double best_f1_on_grid(const std::vector<double>& scores, const std::vector<int>& labels,
                       double lo, double hi, int steps, double* best_t) {
    double best = -1.0, arg = lo;
    for(int k = 0; k <= steps; ++k) {
        double t = lo + (hi - lo) * double(k) / double(steps);
        double v = f1(scores, labels, t);
        if(v > best) {
            best = v;
            arg = t;
        }
    }
    if(best_t)
        *best_t = arg;
    return best;
}

} // namespace testoracle
