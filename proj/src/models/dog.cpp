#include "models/dog.hpp"

#include "nn/adam.hpp"
#include "nn/serialize.hpp"
#include "nn/train.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace decoy::models {

json dog_hparams_to_json(const DogHparams& hp) {
    return json{{"enc_hidden", hp.enc_hidden},
                {"vae_hidden", hp.vae_hidden},
                {"d_z", hp.d_z},
                {"embed_dim", hp.embed_dim},
                {"lambda_d", hp.lambda_d},
                {"lambda_g", hp.lambda_g},
                {"lambda_kl", hp.lambda_kl},
                {"warmup_frac", hp.warmup_frac},
                {"epochs", hp.epochs},
                {"batch_size", hp.batch_size},
                {"lr", hp.lr},
                {"argmax_hitgroup", hp.argmax_hitgroup}};
}

DogHparams dog_hparams_from_json(const json& j, const std::string& ctx) {
    DogHparams hp;
    hp.enc_hidden = field_as<std::vector<int>>(j, "enc_hidden", ctx);
    hp.vae_hidden = field_as<std::vector<int>>(j, "vae_hidden", ctx);
    hp.d_z = field_as<int>(j, "d_z", ctx);
    hp.embed_dim = field_as<int>(j, "embed_dim", ctx);
    hp.lambda_d = field_as<double>(j, "lambda_d", ctx);
    hp.lambda_g = field_as<double>(j, "lambda_g", ctx);
    hp.lambda_kl = field_as<double>(j, "lambda_kl", ctx);
    hp.warmup_frac = field_as<double>(j, "warmup_frac", ctx);
    hp.epochs = field_as<int>(j, "epochs", ctx);
    hp.batch_size = field_as<int>(j, "batch_size", ctx);
    hp.lr = field_as<double>(j, "lr", ctx);
    hp.argmax_hitgroup = field_as<bool>(j, "argmax_hitgroup", ctx);
    return hp;
}

namespace {

nn::Vector onehot_group(HitGroup g) {
    nn::Vector v(HITGROUP_COUNT, 0.0);
    v[size_t(g)] = 1.0;
    return v;
}

HitGroup argmax_group(const nn::Vector& logits) {
    int best = 0;
    for(int i = 1; i < int(logits.size()); ++i)
        if(logits[size_t(i)] > logits[size_t(best)])
            best = i;
    return HitGroup(best);
}

// Forward pass through the whole conditional VAE for one observed outcome.
// Traces and intermediates are kept so train() can run the matching backward
// pass; eval paths just ignore them.
struct DogPass {
    nn::ForwardTrace t_enc, t_ed, t_eg, t_vae, t_dec;
    nn::Vector h, z_in, z_dec, out;
    nn::GaussianLatent q;
    nn::Vector eps; // the draw actually used; zeros in eval mode
};

DogPass dog_forward(const DogModel& m, const nn::Vector& x, double damage_norm, HitGroup group,
                    const nn::Vector& eps) {
    DogPass p;
    p.h = nn::forward(m.cond_encoder, x, p.t_enc);
    nn::Vector ed = nn::forward(m.embed_d, {damage_norm}, p.t_ed);
    nn::Vector eg = nn::forward(m.embed_g, onehot_group(group), p.t_eg);

    p.z_in.reserve(ed.size() + eg.size() + p.h.size());
    p.z_in.insert(p.z_in.end(), ed.begin(), ed.end());
    p.z_in.insert(p.z_in.end(), eg.begin(), eg.end());
    p.z_in.insert(p.z_in.end(), p.h.begin(), p.h.end());

    nn::Vector venc = nn::forward(m.vae_encoder, p.z_in, p.t_vae);
    p.q.mu.assign(venc.begin(), venc.begin() + m.d_z);
    p.q.log_var.assign(venc.begin() + m.d_z, venc.end());
    p.eps = eps;

    nn::Vector z = nn::reparameterize(p.q, p.eps);
    p.z_dec.reserve(z.size() + p.h.size());
    p.z_dec.insert(p.z_dec.end(), z.begin(), z.end());
    p.z_dec.insert(p.z_dec.end(), p.h.begin(), p.h.end());
    p.out = nn::forward(m.decoder, p.z_dec, p.t_dec);
    return p;
}

} // namespace

DogRecon dog_reconstruct(const DogModel& m, const nn::Vector& x, double damage, HitGroup group) {
    DogPass p = dog_forward(m, x, damage / 100.0, group, nn::Vector(size_t(m.d_z), 0.0));
    DogRecon r;
    r.damage = p.out[0] * 100.0;
    r.logits.assign(p.out.begin() + 1, p.out.end());
    r.group = argmax_group(r.logits);
    r.post = p.q;
    return r;
}

DogSampleOut dog_generate(const DogModel& m, const nn::Vector& x, Rng& rng) {
    nn::Vector h = nn::forward(m.cond_encoder, x);
    nn::Vector z_dec;
    z_dec.reserve(size_t(m.d_z) + h.size());
    for(int i = 0; i < m.d_z; ++i)
        z_dec.push_back(rng.normal());
    z_dec.insert(z_dec.end(), h.begin(), h.end());
    nn::Vector out = nn::forward(m.decoder, z_dec);

    DogSampleOut s;
    s.damage = int(std::clamp(std::lround(out[0] * 100.0), 1l, 500l));
    nn::Vector logits(out.begin() + 1, out.end());
    if(m.argmax_hitgroup) {
        s.group = argmax_group(logits);
    } else {
        nn::Vector p = nn::softmax(logits);
        double u = rng.uniform01();
        double acc = 0.0;
        int pick = int(p.size()) - 1; // numerical slack lands on the last class
        for(int i = 0; i < int(p.size()); ++i) {
            acc += p[size_t(i)];
            if(u < acc) {
                pick = i;
                break;
            }
        }
        s.group = HitGroup(pick);
    }
    return s;
}

DogMetrics dog_eval(const DogModel& m, const std::vector<DogRow>& rows) {
    require(!rows.empty(), Errc::invalid_argument, "dog_eval: empty row set");
    DogMetrics out;
    out.n = long(rows.size());
    double mean_d = 0.0;
    for(const DogRow& r : rows)
        mean_d += r.damage;
    mean_d /= double(rows.size());

    double ss_res = 0.0, ss_tot = 0.0;
    long correct = 0;
    for(const DogRow& r : rows) {
        DogRecon rec = dog_reconstruct(m, r.x, r.damage, r.group);
        out.mae += std::abs(rec.damage - r.damage);
        ss_res += (rec.damage - r.damage) * (rec.damage - r.damage);
        ss_tot += (r.damage - mean_d) * (r.damage - mean_d);
        correct += rec.group == r.group;
        out.mean_kl += nn::kl_gauss(rec.post);
    }
    out.mae /= double(rows.size());
    out.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    out.hitgroup_accuracy = double(correct) / double(rows.size());
    out.mean_kl /= double(rows.size());
    return out;
}

DogTrainResult dog_train(const std::vector<DogRow>& train, const std::vector<DogRow>& val,
                         const DogHparams& hp, std::uint64_t seed) {
    require(!train.empty() && !val.empty(), Errc::invalid_argument,
            "dog_train: empty train or validation split");
    require(hp.epochs > 0 && hp.batch_size > 0 && hp.lr > 0.0, Errc::invalid_argument,
            "dog_train: epochs, batch_size and lr must be positive");
    require(hp.d_z > 0 && hp.embed_dim > 0, Errc::invalid_argument,
            "dog_train: latent and embedding dims must be positive");
    require(hp.lambda_d > 0.0 && hp.lambda_g > 0.0 && hp.lambda_kl > 0.0, Errc::invalid_argument,
            "dog_train: loss weights must be positive");

    int in_dim = int(train.front().x.size());
    Rng rng(seed);

    DogTrainResult res;
    DogModel& m = res.model;
    m.d_z = hp.d_z;
    m.argmax_hitgroup = hp.argmax_hitgroup;

    std::vector<int> enc_dims{in_dim};
    enc_dims.insert(enc_dims.end(), hp.enc_hidden.begin(), hp.enc_hidden.end());
    m.cond_encoder = nn::make_mlp(enc_dims, nn::Act::Relu, nn::Act::Relu, rng);
    int ctx_dim = hp.enc_hidden.back();

    m.embed_d = nn::make_mlp({1, hp.embed_dim}, nn::Act::Relu, nn::Act::Relu, rng);
    m.embed_g = nn::make_mlp({HITGROUP_COUNT, hp.embed_dim}, nn::Act::Relu, nn::Act::Relu, rng);

    std::vector<int> vae_dims{2 * hp.embed_dim + ctx_dim};
    vae_dims.insert(vae_dims.end(), hp.vae_hidden.begin(), hp.vae_hidden.end());
    vae_dims.push_back(2 * hp.d_z);
    m.vae_encoder = nn::make_mlp(vae_dims, nn::Act::Relu, nn::Act::Identity, rng);

    std::vector<int> dec_dims{hp.d_z + ctx_dim};
    dec_dims.insert(dec_dims.end(), hp.vae_hidden.begin(), hp.vae_hidden.end());
    dec_dims.push_back(1 + HITGROUP_COUNT);
    m.decoder = nn::make_mlp(dec_dims, nn::Act::Relu, nn::Act::Identity, rng);

    nn::MlpGrads g_enc(m.cond_encoder), g_ed(m.embed_d), g_eg(m.embed_g), g_vae(m.vae_encoder),
        g_dec(m.decoder);

    auto all_params = [&] {
        std::vector<std::span<double>> p;
        for(nn::Mlp* net : {&m.cond_encoder, &m.embed_d, &m.embed_g, &m.vae_encoder, &m.decoder}) {
            auto b = net->param_blocks();
            p.insert(p.end(), b.begin(), b.end());
        }
        return p;
    };
    auto all_grads = [&] {
        std::vector<std::span<double>> g;
        for(nn::MlpGrads* gr : {&g_enc, &g_ed, &g_eg, &g_vae, &g_dec}) {
            auto b = gr->param_blocks();
            g.insert(g.end(), b.begin(), b.end());
        }
        return g;
    };
    auto zero_grads = [&] {
        for(nn::MlpGrads* gr : {&g_enc, &g_ed, &g_eg, &g_vae, &g_dec})
            gr->zero();
    };

    nn::Adam opt(hp.lr);
    opt.register_params(all_params());

    int n = int(train.size());
    long batches_per_epoch = (n + hp.batch_size - 1) / hp.batch_size;
    long total_steps = batches_per_epoch * hp.epochs;
    long warm_steps = std::max(1l, long(double(total_steps) * hp.warmup_frac));

    long step = 0;
    for(int epoch = 0; epoch < hp.epochs; ++epoch) {
        std::vector<int> order = nn::shuffled_indices(n, rng);
        double epoch_loss = 0.0;
        for(int start = 0; start < n; start += hp.batch_size) {
            int mb = std::min(hp.batch_size, n - start);
            double inv = 1.0 / mb;
            double kl_w = hp.lambda_kl * std::min(1.0, double(step + 1) / double(warm_steps));
            zero_grads();
            double batch_loss = 0.0;
            for(int k = 0; k < mb; ++k) {
                const DogRow& row = train[size_t(order[size_t(start + k)])];
                nn::Vector eps(size_t(hp.d_z));
                for(double& e : eps)
                    e = rng.normal();

                DogPass p = dog_forward(m, row.x, row.damage / 100.0, row.group, eps);

                double dd = 0.0;
                double loss_d = nn::squared_error(p.out[0], row.damage / 100.0, dd);
                nn::Vector logits(p.out.begin() + 1, p.out.end());
                nn::Vector dlogits;
                double loss_g = nn::softmax_ce(logits, int(row.group), dlogits);

                nn::Vector dout(p.out.size());
                dout[0] = hp.lambda_d * dd * inv;
                for(int i = 0; i < HITGROUP_COUNT; ++i)
                    dout[size_t(1 + i)] = hp.lambda_g * dlogits[size_t(i)] * inv;

                nn::Vector dz_dec = nn::backward(m.decoder, p.t_dec, std::move(dout), g_dec);
                nn::Vector dz(dz_dec.begin(), dz_dec.begin() + hp.d_z);
                nn::Vector dh(dz_dec.begin() + hp.d_z, dz_dec.end());

                nn::Vector dmu(size_t(hp.d_z), 0.0), dlv(size_t(hp.d_z), 0.0);
                nn::reparameterize_backward(p.q, p.eps, dz, dmu, dlv);
                double loss_kl = nn::kl_gauss(p.q, kl_w * inv, dmu, dlv);

                nn::Vector dvenc;
                dvenc.reserve(2 * size_t(hp.d_z));
                dvenc.insert(dvenc.end(), dmu.begin(), dmu.end());
                dvenc.insert(dvenc.end(), dlv.begin(), dlv.end());
                nn::Vector dz_in = nn::backward(m.vae_encoder, p.t_vae, std::move(dvenc), g_vae);

                std::size_t e = size_t(hp.embed_dim);
                nn::backward(m.embed_d, p.t_ed, nn::Vector(dz_in.begin(), dz_in.begin() + e),
                             g_ed);
                nn::backward(m.embed_g, p.t_eg,
                             nn::Vector(dz_in.begin() + e, dz_in.begin() + 2 * e), g_eg);
                for(std::size_t i = 0; i < dh.size(); ++i)
                    dh[i] += dz_in[2 * e + i];
                nn::backward(m.cond_encoder, p.t_enc, std::move(dh), g_enc);

                batch_loss += hp.lambda_d * loss_d + hp.lambda_g * loss_g + kl_w * loss_kl;
            }
            nn::require_finite_loss(batch_loss * inv, "dog", step);
            opt.step(all_params(), all_grads());
            epoch_loss += batch_loss;
            ++step;
        }
        res.epoch_loss.push_back(epoch_loss / n);
    }

    res.val = dog_eval(m, val);
    return res;
}

std::string export_latents(const DogModel& m, const std::vector<DogRow>& rows) {
    std::ostringstream os;
    for(int i = 0; i < m.d_z; ++i)
        os << "z" << i << ",";
    os << "damage,hit_group\n";
    char buf[32];
    for(const DogRow& r : rows) {
        DogRecon rec = dog_reconstruct(m, r.x, r.damage, r.group);
        for(double v : rec.post.mu) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << buf << ",";
        }
        std::snprintf(buf, sizeof buf, "%.17g", r.damage);
        os << buf << "," << int(r.group) << "\n";
    }
    return os.str();
}

std::vector<std::vector<double>> parse_latents(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    require(bool(std::getline(is, line)), Errc::parse, "latent csv: missing header");
    std::vector<std::vector<double>> rows;
    while(std::getline(is, line)) {
        if(line.empty())
            continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while(std::getline(ls, cell, ','))
            row.push_back(std::stod(cell));
        if(!rows.empty())
            require(row.size() == rows.front().size(), Errc::parse,
                    "latent csv: ragged row widths");
        rows.push_back(std::move(row));
    }
    return rows;
}

RegressionBaseline regression_train(const std::vector<DogRow>& train, const DogHparams& hp,
                                    std::uint64_t seed) {
    require(!train.empty(), Errc::invalid_argument, "regression_train: empty training set");
    int in_dim = int(train.front().x.size());
    Rng rng(seed);

    RegressionBaseline m;
    std::vector<int> enc_dims{in_dim};
    enc_dims.insert(enc_dims.end(), hp.enc_hidden.begin(), hp.enc_hidden.end());
    m.encoder = nn::make_mlp(enc_dims, nn::Act::Relu, nn::Act::Relu, rng);
    m.head = nn::make_mlp({hp.enc_hidden.back(), 1 + HITGROUP_COUNT}, nn::Act::Identity,
                          nn::Act::Identity, rng);

    nn::MlpGrads g_enc(m.encoder), g_head(m.head);
    auto all_params = [&] {
        auto p = m.encoder.param_blocks();
        auto ph = m.head.param_blocks();
        p.insert(p.end(), ph.begin(), ph.end());
        return p;
    };
    auto all_grads = [&] {
        auto g = g_enc.param_blocks();
        auto gh = g_head.param_blocks();
        g.insert(g.end(), gh.begin(), gh.end());
        return g;
    };

    nn::Adam opt(hp.lr);
    opt.register_params(all_params());

    int n = int(train.size());
    long step = 0;
    for(int epoch = 0; epoch < hp.epochs; ++epoch) {
        std::vector<int> order = nn::shuffled_indices(n, rng);
        for(int start = 0; start < n; start += hp.batch_size) {
            int mb = std::min(hp.batch_size, n - start);
            double inv = 1.0 / mb;
            g_enc.zero();
            g_head.zero();
            double batch_loss = 0.0;
            for(int k = 0; k < mb; ++k) {
                const DogRow& row = train[size_t(order[size_t(start + k)])];
                nn::ForwardTrace te, th;
                nn::Vector h = nn::forward(m.encoder, row.x, te);
                nn::Vector out = nn::forward(m.head, h, th);

                double dd = 0.0;
                double loss_d = nn::squared_error(out[0], row.damage / 100.0, dd);
                nn::Vector logits(out.begin() + 1, out.end());
                nn::Vector dlogits;
                double loss_g = nn::softmax_ce(logits, int(row.group), dlogits);

                nn::Vector dout(out.size());
                dout[0] = hp.lambda_d * dd * inv;
                for(int i = 0; i < HITGROUP_COUNT; ++i)
                    dout[size_t(1 + i)] = hp.lambda_g * dlogits[size_t(i)] * inv;

                nn::Vector dh = nn::backward(m.head, th, std::move(dout), g_head);
                nn::backward(m.encoder, te, std::move(dh), g_enc);
                batch_loss += hp.lambda_d * loss_d + hp.lambda_g * loss_g;
            }
            nn::require_finite_loss(batch_loss * inv, "regression baseline", step);
            opt.step(all_params(), all_grads());
            ++step;
        }
    }
    return m;
}

RegressionPrediction regression_predict(const RegressionBaseline& m, const nn::Vector& x) {
    nn::Vector out = nn::forward(m.head, nn::forward(m.encoder, x));
    RegressionPrediction p;
    p.damage = out[0] * 100.0;
    p.group = argmax_group(nn::Vector(out.begin() + 1, out.end()));
    return p;
}

json dog_to_json(const DogModel& m) {
    return json{{"format_version", 1},
                {"kind", "dog"},
                {"d_z", m.d_z},
                {"argmax_hitgroup", m.argmax_hitgroup},
                {"cond_encoder", nn::mlp_to_json(m.cond_encoder)},
                {"embed_d", nn::mlp_to_json(m.embed_d)},
                {"embed_g", nn::mlp_to_json(m.embed_g)},
                {"vae_encoder", nn::mlp_to_json(m.vae_encoder)},
                {"decoder", nn::mlp_to_json(m.decoder)}};
}

DogModel dog_from_json(const json& j, const std::string& ctx) {
    require(field_as<int>(j, "format_version", ctx) == 1, Errc::parse,
            ctx + ": unsupported format_version");
    require(field_as<std::string>(j, "kind", ctx) == "dog", Errc::parse,
            ctx + ": not an outcome-generator checkpoint");
    DogModel m;
    m.d_z = field_as<int>(j, "d_z", ctx);
    m.argmax_hitgroup = field_as<bool>(j, "argmax_hitgroup", ctx);
    m.cond_encoder = nn::mlp_from_json(field_as<json>(j, "cond_encoder", ctx), ctx + ".cond_encoder");
    m.embed_d = nn::mlp_from_json(field_as<json>(j, "embed_d", ctx), ctx + ".embed_d");
    m.embed_g = nn::mlp_from_json(field_as<json>(j, "embed_g", ctx), ctx + ".embed_g");
    m.vae_encoder = nn::mlp_from_json(field_as<json>(j, "vae_encoder", ctx), ctx + ".vae_encoder");
    m.decoder = nn::mlp_from_json(field_as<json>(j, "decoder", ctx), ctx + ".decoder");
    require(m.d_z > 0, Errc::validation, ctx + ": latent dim must be positive");
    require(m.vae_encoder.out_dim() == 2 * m.d_z, Errc::validation,
            ctx + ": latent encoder must emit mean and log-variance");
    require(m.decoder.in_dim() == m.d_z + m.cond_encoder.out_dim(), Errc::validation,
            ctx + ": decoder input must chain latent and context dims");
    require(m.decoder.out_dim() == 1 + HITGROUP_COUNT, Errc::validation,
            ctx + ": decoder must emit damage plus hit-group logits");
    return m;
}

} // namespace decoy::models
