#include "data/law.hpp"

namespace decoy::data {

namespace {

const char* KINDS[] = {"never", "always_fixed", "distance_rule", "bimodal",
                       "deterministic_range"};

void check_kind(const std::string& kind) {
    for(const char* k : KINDS)
        if(kind == k)
            return;
    raise(Errc::parse, "unknown damage law kind '" + kind + "'");
}

} // namespace

json law_to_json(const LawSpec& l) {
    check_kind(l.kind);
    return json{{"format_version", 1},
                {"kind", l.kind},
                {"damage", l.damage},
                {"hit_group", l.hit_group},
                {"range", l.range},
                {"noise", l.noise},
                {"head_damage", l.head_damage},
                {"other_damage", l.other_damage},
                {"fire_prob", l.fire_prob},
                {"head_prob", l.head_prob},
                {"head_lo", l.head_lo},
                {"head_hi", l.head_hi},
                {"leg_lo", l.leg_lo},
                {"leg_hi", l.leg_hi}};
}

LawSpec law_from_json(const json& j, const std::string& ctx) {
    require(j.value("format_version", 0) == 1, Errc::parse, ctx + ": unsupported law version");
    LawSpec l;
    l.kind = field_as<std::string>(j, "kind", ctx);
    check_kind(l.kind);
    l.damage = j.value("damage", l.damage);
    l.hit_group = j.value("hit_group", l.hit_group);
    l.range = j.value("range", l.range);
    l.noise = j.value("noise", l.noise);
    l.head_damage = j.value("head_damage", l.head_damage);
    l.other_damage = j.value("other_damage", l.other_damage);
    l.fire_prob = j.value("fire_prob", l.fire_prob);
    l.head_prob = j.value("head_prob", l.head_prob);
    l.head_lo = j.value("head_lo", l.head_lo);
    l.head_hi = j.value("head_hi", l.head_hi);
    l.leg_lo = j.value("leg_lo", l.leg_lo);
    l.leg_hi = j.value("leg_hi", l.leg_hi);
    require(l.noise >= 0.0 && l.noise < 1.0, Errc::parse, ctx + ": noise outside [0,1)");
    require(l.range > 0.0, Errc::parse, ctx + ": non-positive range");
    return l;
}

void save_law(const std::string& path, const LawSpec& law) { save_json(path, law_to_json(law)); }

LawSpec load_law(const std::string& path) { return law_from_json(load_json(path), path); }

LawOracle::LawOracle(LawSpec spec) : m_spec(std::move(spec)) {
    check_kind(m_spec.kind);
    m_fixed_group = hitgroup_from_name(m_spec.hit_group);
}

sim::DamageDecision LawOracle::resolve_pair(const sim::AgentState& attacker,
                                            const sim::AgentState& victim, Rng& rng) {
    sim::DamageDecision d;
    double dist_m = dist(attacker.pos, victim.pos);
    if(m_spec.kind == "never")
        return d;
    if(m_spec.kind == "always_fixed") {
        d.fire = true;
        d.damage = m_spec.damage;
        d.group = m_fixed_group;
        return d;
    }
    if(m_spec.kind == "distance_rule") {
        if(dist_m >= m_spec.range)
            return d;
        if(rng.uniform01() < m_spec.noise)
            return d; // suppressed hit
        d.fire = true;
        d.damage = m_spec.damage;
        d.group = m_fixed_group;
        return d;
    }
    if(m_spec.kind == "bimodal") {
        if(rng.uniform01() >= m_spec.fire_prob)
            return d;
        d.fire = true;
        if(rng.uniform01() < m_spec.head_prob) {
            d.group = HitGroup::Head;
            d.damage = m_spec.head_lo + int(rng.below(std::uint64_t(m_spec.head_hi - m_spec.head_lo + 1)));
        } else {
            d.group = HitGroup::Leg;
            d.damage = m_spec.leg_lo + int(rng.below(std::uint64_t(m_spec.leg_hi - m_spec.leg_lo + 1)));
        }
        return d;
    }
    // deterministic_range
    d.fire = true;
    if(dist_m < m_spec.range) {
        d.group = HitGroup::Head;
        d.damage = m_spec.head_damage;
    } else {
        d.group = HitGroup::Leg;
        d.damage = m_spec.other_damage;
    }
    return d;
}

} // namespace decoy::data
