#include "models/features.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace decoy::models {

namespace {

constexpr double PI = 3.141592653589793238462643;

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for(const auto& e : v)
        s += (s.empty() ? "" : ", ") + e;
    return s;
}

int index_of(const std::vector<std::string>& vocab, const std::string& name, const char* what) {
    auto it = std::find(vocab.begin(), vocab.end(), name);
    if(it == vocab.end())
        raise(Errc::validation, std::string(what) + " '" + name +
                                    "' is not in the vocabulary [" + join(vocab) + "]");
    return int(it - vocab.begin());
}

} // namespace

const std::vector<std::string>& default_weapon_vocabulary() {
    static const std::vector<std::string> vocab = {"unknown", "ak47",  "m4a4", "m4a1_silencer",
                                                   "awp",     "famas", "mp9",  "mac10",
                                                   "deagle",  "glock", "usp_silencer"};
    return vocab;
}

int FeatureSchema::feature_dim() const {
    // Per agent: position 3, view (sin, cos) 2, weapon one-hot, armor, helmet.
    int per_agent = 3 + 2 + int(weapons.size()) + 1 + 1;
    return int(maps.size()) + 2 * per_agent + 3; // + distance, bearing (sin, cos)
}

int FeatureSchema::map_index(const std::string& name) const {
    return index_of(maps, name, "map");
}

int FeatureSchema::weapon_index(const std::string& name) const {
    return index_of(weapons, name, "weapon");
}

FeatureSchema make_schema(const std::vector<std::string>& maps, const geometry::Aabb& bounds) {
    require(!maps.empty(), Errc::invalid_argument, "feature schema: no maps given");
    require(bounds.lo.x < bounds.hi.x && bounds.lo.y < bounds.hi.y && bounds.lo.z < bounds.hi.z,
            Errc::invalid_argument, "feature schema: degenerate normalization bounds");
    std::set<std::string> seen(maps.begin(), maps.end());
    require(seen.size() == maps.size(), Errc::invalid_argument,
            "feature schema: duplicate map name");
    FeatureSchema s;
    s.maps = maps;
    s.weapons = default_weapon_vocabulary();
    s.lo = bounds.lo;
    s.hi = bounds.hi;
    return s;
}

json schema_to_json(const FeatureSchema& s) {
    return json{{"format_version", 1},
                {"maps", s.maps},
                {"weapons", s.weapons},
                {"bounds",
                 {{"lo", {s.lo.x, s.lo.y, s.lo.z}}, {"hi", {s.hi.x, s.hi.y, s.hi.z}}}}};
}

FeatureSchema schema_from_json(const json& j, const std::string& ctx) {
    FeatureSchema s;
    s.maps = field_as<std::vector<std::string>>(j, "maps", ctx);
    s.weapons = field_as<std::vector<std::string>>(j, "weapons", ctx);
    json b = field_as<json>(j, "bounds", ctx);
    auto lo = field_as<std::vector<double>>(b, "lo", ctx + ".bounds");
    auto hi = field_as<std::vector<double>>(b, "hi", ctx + ".bounds");
    require(lo.size() == 3 && hi.size() == 3, Errc::parse, ctx + ": bounds must be 3D");
    s.lo = {lo[0], lo[1], lo[2]};
    s.hi = {hi[0], hi[1], hi[2]};
    require(!s.maps.empty() && !s.weapons.empty(), Errc::validation,
            ctx + ": empty vocabulary");
    require(s.lo.x < s.hi.x && s.lo.y < s.hi.y && s.lo.z < s.hi.z, Errc::validation,
            ctx + ": degenerate normalization bounds");
    return s;
}

void save_schema(const std::string& path, const FeatureSchema& s) {
    save_json(path, schema_to_json(s));
}

FeatureSchema load_schema(const std::string& path) {
    return schema_from_json(load_json(path), path);
}

namespace {

void append_agent(nn::Vector& x, const FeatureSchema& s, const sim::AgentState& a) {
    auto axis = [](double v, double lo, double hi) { return 2.0 * (v - lo) / (hi - lo) - 1.0; };
    x.push_back(axis(a.pos.x, s.lo.x, s.hi.x));
    x.push_back(axis(a.pos.y, s.lo.y, s.hi.y));
    x.push_back(axis(a.pos.z, s.lo.z, s.hi.z));
    double r = a.view * PI / 180.0;
    x.push_back(std::sin(r));
    x.push_back(std::cos(r));
    int wi = s.weapon_index(a.eq.weapon);
    for(int i = 0; i < int(s.weapons.size()); ++i)
        x.push_back(i == wi ? 1.0 : 0.0);
    x.push_back(a.eq.armor / 100.0);
    x.push_back(a.eq.helmet ? 1.0 : 0.0);
}

} // namespace

nn::Vector encode_pair(const FeatureSchema& schema, const std::string& map,
                       const sim::AgentState& attacker, const sim::AgentState& victim) {
    require(attacker.alive && victim.alive, Errc::invalid_argument,
            "encode_pair: both agents must be alive");
    nn::Vector x;
    x.reserve(schema.feature_dim());
    int mi = schema.map_index(map);
    for(int i = 0; i < int(schema.maps.size()); ++i)
        x.push_back(i == mi ? 1.0 : 0.0);
    append_agent(x, schema, attacker);
    append_agent(x, schema, victim);
    double diag = dist(schema.hi, schema.lo);
    x.push_back(dist(attacker.pos, victim.pos) / diag);
    // Where the victim sits relative to the attacker's facing; lets the model
    // see facing without learning the absolute-angle arithmetic itself.
    double rel = (bearing_degrees(attacker.pos, victim.pos) - attacker.view) * PI / 180.0;
    x.push_back(std::sin(rel));
    x.push_back(std::cos(rel));
    return x;
}

std::vector<PairRow> pairwise_batch(const FeatureSchema& schema, const std::string& map,
                                    const std::vector<sim::AgentState>& agents) {
    std::vector<const sim::AgentState*> order;
    order.reserve(agents.size());
    for(const auto& a : agents)
        if(a.alive)
            order.push_back(&a);
    std::sort(order.begin(), order.end(),
              [](const sim::AgentState* a, const sim::AgentState* b) { return a->id < b->id; });

    std::vector<PairRow> rows;
    for(const sim::AgentState* a : order)
        for(const sim::AgentState* v : order)
            if(a->team != v->team)
                rows.push_back({a->id, v->id, encode_pair(schema, map, *a, *v)});
    return rows;
}

namespace {

// Reconstitutes the per-agent state a model would have seen live at sample k.
sim::AgentState state_at(const data::AgentTrack& tr, int k) {
    sim::AgentState st;
    st.id = tr.id;
    st.team = tr.team;
    st.pos = tr.pos[size_t(k)];
    st.view = tr.view[size_t(k)];
    st.health = tr.health[size_t(k)];
    st.alive = st.health > 0;
    st.eq = {tr.weapon, tr.armor, tr.helmet};
    return st;
}

} // namespace

std::vector<DipRow> dip_rows(const FeatureSchema& schema, const std::vector<data::Round>& rounds) {
    std::vector<DipRow> out;
    for(const data::Round& raw : rounds) {
        data::Round r = data::align_damage(raw);
        std::set<std::tuple<int, int, int>> fired; // (sample, attacker, victim)
        for(const data::DamageEvent& ev : r.damage_events)
            fired.insert({data::aligned_tick(ev.t, r.fps), ev.attacker, ev.victim});

        for(int k = 0; k < r.sample_count(); ++k) {
            std::vector<sim::AgentState> states;
            states.reserve(r.agents.size());
            for(const data::AgentTrack& tr : r.agents)
                states.push_back(state_at(tr, k));
            for(PairRow& row : pairwise_batch(schema, r.map, states)) {
                int label = fired.count({k, row.attacker, row.victim}) ? 1 : 0;
                out.push_back({std::move(row.x), label});
            }
        }
    }
    return out;
}

std::vector<DogRow> dog_rows(const FeatureSchema& schema, const std::vector<data::Round>& rounds) {
    std::vector<DogRow> out;
    for(const data::Round& raw : rounds) {
        data::Round r = data::align_damage(raw);
        std::map<int, const data::AgentTrack*> by_id;
        for(const data::AgentTrack& tr : r.agents)
            by_id[tr.id] = &tr;

        for(const data::DamageEvent& ev : r.damage_events) {
            int k = data::aligned_tick(ev.t, r.fps);
            sim::AgentState a = state_at(*by_id.at(ev.attacker), k);
            sim::AgentState v = state_at(*by_id.at(ev.victim), k);
            out.push_back({encode_pair(schema, r.map, a, v), double(ev.damage), ev.group});
        }
    }
    return out;
}

} // namespace decoy::models
