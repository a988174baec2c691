#include "metrics/evaluate.hpp"

#include "metrics/similarity.hpp"
#include "replay/convert.hpp"

#include <algorithm>
#include <map>

namespace decoy::metrics {

namespace {

std::vector<Vec3> flatten_z(std::vector<Vec3> pts) {
    for(Vec3& p : pts)
        p.z = 0.0;
    return pts;
}

bool is_constant(const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs.front(); });
}

} // namespace

EvalResult evaluate_replay(const std::vector<data::Round>& original,
                           const std::vector<data::Round>& replayed,
                           const geometry::Aabb& bounds, const EvalOptions& opt) {
    require(!original.empty() && !replayed.empty(), Errc::invalid_argument,
            "evaluate_replay: empty corpus");
    require(opt.cell > 0.0, Errc::invalid_argument, "evaluate_replay: cell size must be positive");

    std::map<int, const data::Round*> by_id;
    for(const data::Round& r : original)
        by_id[r.round_id] = &r;

    MetricAccumulator acc;
    std::vector<std::pair<int, int>> winners;
    std::vector<double> hp_orig, hp_rep;
    std::vector<std::vector<Vec3>> tracks_orig, tracks_rep;

    int matched = 0;
    for(const data::Round& rep : replayed) {
        auto it = by_id.find(rep.round_id);
        require(it != by_id.end(), Errc::validation,
                "evaluate_replay: replayed round " + std::to_string(rep.round_id) +
                    " has no original");
        const data::Round& orig = *it->second;
        ++matched;
        winners.emplace_back(int(orig.outcome.winner), int(rep.outcome.winner));

        std::map<int, const data::AgentTrack*> rep_tracks;
        for(const data::AgentTrack& tr : rep.agents)
            rep_tracks[tr.id] = &tr;

        for(const data::AgentTrack& otr : orig.agents) {
            auto rit = rep_tracks.find(otr.id);
            require(rit != rep_tracks.end(), Errc::validation,
                    "evaluate_replay: agent " + std::to_string(otr.id) +
                        " missing from replayed round " + std::to_string(rep.round_id));
            const data::AgentTrack& rtr = *rit->second;
            require(otr.pos.size() >= 2 && rtr.pos.size() >= 2, Errc::validation,
                    "evaluate_replay: tracks need at least 2 samples");

            int len = int(std::max(otr.pos.size(), rtr.pos.size()));
            std::vector<Vec3> a = replay::resample(otr.pos, len);
            std::vector<Vec3> b = replay::resample(rtr.pos, len);
            if(!opt.use_3d) {
                a = flatten_z(std::move(a));
                b = flatten_z(std::move(b));
            }

            DtwResult d = dtw(a, b);
            acc.add("dtw", otr.team, d.cost);
            acc.add("dtw_per_step", otr.team, d.per_step());
            acc.add("frechet", otr.team, frechet(a, b));
            acc.add("mean_euclidean", otr.team, mean_euclidean(a, b));
            acc.add("rmse", otr.team, rmse(a, b));

            std::vector<double> ho(otr.health.begin(), otr.health.end());
            std::vector<double> hr(rtr.health.begin(), rtr.health.end());
            ho = replay::resample(ho, len);
            hr = replay::resample(hr, len);
            hp_orig.insert(hp_orig.end(), ho.begin(), ho.end());
            hp_rep.insert(hp_rep.end(), hr.begin(), hr.end());

            tracks_orig.push_back(otr.pos);
            tracks_rep.push_back(rtr.pos);
        }
    }

    acc.set_scalar("outcome_agreement", outcome_agreement(winners));
    acc.set_scalar("rounds", double(matched));
    if(!is_constant(hp_orig) && !is_constant(hp_rep))
        acc.set_scalar("hp_correlation", pearson(hp_orig, hp_rep));

    EvalResult out;
    out.report = acc.finalize();
    GridSpec spec = grid_for_bounds(bounds.lo, bounds.hi, opt.cell);
    out.original_heat = heatmap(tracks_orig, spec);
    out.replayed_heat = heatmap(tracks_rep, spec);
    out.diff = pct_diff(out.original_heat, out.replayed_heat);
    return out;
}

} // namespace decoy::metrics
