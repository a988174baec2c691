#include "models/dip.hpp"

#include "nn/adam.hpp"
#include "nn/losses.hpp"
#include "nn/serialize.hpp"
#include "nn/train.hpp"

#include <algorithm>

namespace decoy::models {

json dip_hparams_to_json(const DipHparams& hp) {
    return json{{"hidden", hp.hidden},
                {"epochs", hp.epochs},
                {"batch_size", hp.batch_size},
                {"lr", hp.lr}};
}

DipHparams dip_hparams_from_json(const json& j, const std::string& ctx) {
    DipHparams hp;
    hp.hidden = field_as<std::vector<int>>(j, "hidden", ctx);
    hp.epochs = field_as<int>(j, "epochs", ctx);
    hp.batch_size = field_as<int>(j, "batch_size", ctx);
    hp.lr = field_as<double>(j, "lr", ctx);
    return hp;
}

double DipModel::score(const nn::Vector& x) const {
    return nn::sigmoid(nn::forward(head, nn::forward(encoder, x))[0]);
}

namespace {

void check_two_classes(const std::vector<int>& labels, const char* what) {
    bool pos = false, neg = false;
    for(int l : labels)
        (l ? pos : neg) = true;
    require(pos && neg, Errc::validation,
            std::string(what) + " contains a single class; both outcomes are needed");
}

// Indices sorted by descending score; the shared ordering behind every
// ranking metric here.
std::vector<int> desc_order(const std::vector<double>& scores) {
    std::vector<int> idx(scores.size());
    for(std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = int(i);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    return idx;
}

} // namespace

double auc_roc(const std::vector<double>& scores, const std::vector<int>& labels) {
    require(scores.size() == labels.size() && !scores.empty(), Errc::invalid_argument,
            "auc_roc: size mismatch or empty input");
    check_two_classes(labels, "auc_roc: label set");

    // Rank-sum form with midranks on tied scores.
    std::vector<int> idx(scores.size());
    for(std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = int(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    long n_pos = 0;
    std::size_t i = 0;
    while(i < idx.size()) {
        std::size_t j = i;
        while(j < idx.size() && scores[idx[j]] == scores[idx[i]])
            ++j;
        double midrank = 0.5 * double(i + 1 + j); // average of ranks i+1 .. j
        for(std::size_t k = i; k < j; ++k)
            if(labels[idx[k]]) {
                rank_sum_pos += midrank;
                ++n_pos;
            }
        i = j;
    }
    long n_neg = long(scores.size()) - n_pos;
    return (rank_sum_pos - 0.5 * double(n_pos) * double(n_pos + 1)) /
           (double(n_pos) * double(n_neg));
}

double average_precision(const std::vector<double>& scores, const std::vector<int>& labels) {
    require(scores.size() == labels.size() && !scores.empty(), Errc::invalid_argument,
            "average_precision: size mismatch or empty input");
    check_two_classes(labels, "average_precision: label set");

    std::vector<int> idx = desc_order(scores);
    long total_pos = 0;
    for(int l : labels)
        total_pos += l;

    double ap = 0.0, prev_recall = 0.0;
    long tp = 0, fp = 0;
    std::size_t i = 0;
    while(i < idx.size()) {
        std::size_t j = i;
        while(j < idx.size() && scores[idx[j]] == scores[idx[i]])
            ++j;
        for(std::size_t k = i; k < j; ++k)
            (labels[idx[k]] ? tp : fp)++;
        double recall = double(tp) / double(total_pos);
        double precision = double(tp) / double(tp + fp);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return ap;
}

double f1_at_threshold(const std::vector<double>& scores, const std::vector<int>& labels,
                       double t) {
    require(scores.size() == labels.size(), Errc::invalid_argument, "f1: size mismatch");
    long tp = 0, fp = 0, fn = 0;
    for(std::size_t i = 0; i < scores.size(); ++i) {
        bool pred = scores[i] >= t;
        if(pred && labels[i])
            ++tp;
        else if(pred)
            ++fp;
        else if(labels[i])
            ++fn;
    }
    return tp == 0 ? 0.0 : 2.0 * tp / double(2 * tp + fp + fn);
}

double calibrate_threshold(const std::vector<double>& scores, const std::vector<int>& labels) {
    require(scores.size() == labels.size() && !scores.empty(), Errc::invalid_argument,
            "calibrate_threshold: size mismatch or empty input");
    check_two_classes(labels, "calibrate_threshold: label set");

    long total_pos = 0;
    for(int l : labels)
        total_pos += l;

    // Sweep thresholds from the highest score down, keeping running counts.
    // At threshold = s every element scoring >= s is predicted positive, so
    // each distinct score is one F1 evaluation. Walking downward and
    // replacing on >= makes equal F1 settle on the lowest threshold.
    std::vector<int> idx = desc_order(scores);
    double best_f1 = -1.0, best_t = 0.0;
    long tp = 0, fp = 0;
    std::size_t i = 0;
    while(i < idx.size()) {
        std::size_t j = i;
        while(j < idx.size() && scores[idx[j]] == scores[idx[i]])
            ++j;
        for(std::size_t k = i; k < j; ++k)
            (labels[idx[k]] ? tp : fp)++;
        long fn = total_pos - tp;
        double f1 = tp == 0 ? 0.0 : 2.0 * tp / double(2 * tp + fp + fn);
        if(f1 >= best_f1) {
            best_f1 = f1;
            best_t = scores[idx[i]];
        }
        i = j;
    }
    return best_t;
}

BinaryMetrics binary_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                             double threshold) {
    require(scores.size() == labels.size() && !scores.empty(), Errc::invalid_argument,
            "binary_metrics: size mismatch or empty input");
    BinaryMetrics m;
    for(std::size_t i = 0; i < scores.size(); ++i) {
        bool pred = scores[i] >= threshold;
        if(pred && labels[i])
            ++m.tp;
        else if(pred)
            ++m.fp;
        else if(labels[i])
            ++m.fn;
        else
            ++m.tn;
    }
    long n = long(scores.size());
    m.accuracy = double(m.tp + m.tn) / double(n);
    m.precision = (m.tp + m.fp) ? double(m.tp) / double(m.tp + m.fp) : 0.0;
    m.recall = (m.tp + m.fn) ? double(m.tp) / double(m.tp + m.fn) : 0.0;
    m.f1 = m.tp ? 2.0 * m.tp / double(2 * m.tp + m.fp + m.fn) : 0.0;
    m.auc = auc_roc(scores, labels);
    m.ap = average_precision(scores, labels);
    return m;
}

DipTrainResult dip_train(const std::vector<DipRow>& train, const std::vector<DipRow>& val,
                         const DipHparams& hp, std::uint64_t seed) {
    require(!train.empty() && !val.empty(), Errc::invalid_argument,
            "dip_train: empty train or validation split");
    require(hp.epochs > 0 && hp.batch_size > 0 && hp.lr > 0.0, Errc::invalid_argument,
            "dip_train: epochs, batch_size and lr must be positive");
    {
        std::vector<int> tl, vl;
        for(const auto& r : train)
            tl.push_back(r.label);
        for(const auto& r : val)
            vl.push_back(r.label);
        check_two_classes(tl, "dip_train: training split");
        check_two_classes(vl, "dip_train: validation split");
    }

    int in_dim = int(train.front().x.size());
    Rng rng(seed);

    DipTrainResult res;
    std::vector<int> enc_dims{in_dim};
    enc_dims.insert(enc_dims.end(), hp.hidden.begin(), hp.hidden.end());
    res.model.encoder = nn::make_mlp(enc_dims, nn::Act::Relu, nn::Act::Relu, rng);
    res.model.head = nn::make_mlp({hp.hidden.back(), 1}, nn::Act::Identity, nn::Act::Identity, rng);

    nn::Mlp& enc = res.model.encoder;
    nn::Mlp& head = res.model.head;
    nn::MlpGrads g_enc(enc), g_head(head);

    auto all_params = [&] {
        auto p = enc.param_blocks();
        auto ph = head.param_blocks();
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
        double epoch_loss = 0.0;
        for(int start = 0; start < n; start += hp.batch_size) {
            int m = std::min(hp.batch_size, n - start);
            g_enc.zero();
            g_head.zero();
            double batch_loss = 0.0;
            for(int k = 0; k < m; ++k) {
                const DipRow& row = train[size_t(order[size_t(start + k)])];
                nn::ForwardTrace te, th;
                nn::Vector h = nn::forward(enc, row.x, te);
                nn::Vector out = nn::forward(head, h, th);
                double dlogit = 0.0;
                batch_loss += nn::bce_with_logits(out[0], double(row.label), dlogit);
                nn::Vector dh = nn::backward(head, th, {dlogit / m}, g_head);
                nn::backward(enc, te, std::move(dh), g_enc);
            }
            nn::require_finite_loss(batch_loss / m, "dip", step);
            opt.step(all_params(), all_grads());
            epoch_loss += batch_loss;
            ++step;
        }
        res.epoch_loss.push_back(epoch_loss / n);
    }

    std::vector<double> scores;
    std::vector<int> labels;
    scores.reserve(val.size());
    for(const DipRow& row : val) {
        scores.push_back(res.model.score(row.x));
        labels.push_back(row.label);
    }
    res.model.threshold = calibrate_threshold(scores, labels);
    res.val = binary_metrics(scores, labels, res.model.threshold);
    return res;
}

json dip_to_json(const DipModel& m) {
    return json{{"format_version", 1},
                {"kind", "dip"},
                {"encoder", nn::mlp_to_json(m.encoder)},
                {"head", nn::mlp_to_json(m.head)},
                {"threshold", m.threshold}};
}

DipModel dip_from_json(const json& j, const std::string& ctx) {
    require(field_as<int>(j, "format_version", ctx) == 1, Errc::parse,
            ctx + ": unsupported format_version");
    require(field_as<std::string>(j, "kind", ctx) == "dip", Errc::parse,
            ctx + ": not a fire-classifier checkpoint");
    DipModel m;
    m.encoder = nn::mlp_from_json(field_as<json>(j, "encoder", ctx), ctx + ".encoder");
    m.head = nn::mlp_from_json(field_as<json>(j, "head", ctx), ctx + ".head");
    m.threshold = field_as<double>(j, "threshold", ctx);
    require(m.threshold > 0.0 && m.threshold < 1.0, Errc::validation,
            ctx + ": threshold must lie in (0, 1)");
    require(m.encoder.out_dim() == m.head.in_dim() && m.head.out_dim() == 1, Errc::validation,
            ctx + ": encoder and head shapes do not chain to a single logit");
    return m;
}

} // namespace decoy::models
