#pragma once

#include "models/features.hpp"

namespace decoy::models {

struct DipHparams {
    std::vector<int> hidden = {128, 128, 64}; // context-encoder widths; head is [last -> 1]
    int epochs = 8;
    int batch_size = 256;
    double lr = 1e-3;
};

json dip_hparams_to_json(const DipHparams& hp);
DipHparams dip_hparams_from_json(const json& j, const std::string& ctx);

// Binary fire/no-fire classifier over pair features: a relu context encoder
// feeding a single-logit head, with a validation-calibrated probability
// threshold.
struct DipModel {
    nn::Mlp encoder;
    nn::Mlp head;
    double threshold = 0.5;

    double score(const nn::Vector& x) const; // P(damage) in (0, 1)
    bool decide(const nn::Vector& x) const { return score(x) >= threshold; }
};

struct BinaryMetrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double auc = 0.0; // area under the ROC curve, midrank tie handling
    double ap = 0.0;  // average precision (step-integrated PR curve)
    long tp = 0, fp = 0, tn = 0, fn = 0;
};

// Threshold-free ranking metrics. Both raise when labels are single-class.
double auc_roc(const std::vector<double>& scores, const std::vector<int>& labels);
double average_precision(const std::vector<double>& scores, const std::vector<int>& labels);

// F1 of the `score >= t` rule.
double f1_at_threshold(const std::vector<double>& scores, const std::vector<int>& labels,
                       double t);

// Max-F1 threshold over the operating points of the `score >= t` rule. The
// candidates are exactly the distinct scores, which realize every achievable
// confusion matrix; equal F1 resolves to the lowest threshold.
double calibrate_threshold(const std::vector<double>& scores, const std::vector<int>& labels);

// Confusion counts and derived rates of `score >= threshold`, plus the
// ranking metrics.
BinaryMetrics binary_metrics(const std::vector<double>& scores, const std::vector<int>& labels,
                             double threshold);

struct DipTrainResult {
    DipModel model;
    BinaryMetrics val;              // at the calibrated threshold
    std::vector<double> epoch_loss; // mean training loss per epoch
};

// Binary cross-entropy training with adaptive-moment updates, then threshold
// calibration and metric evaluation on the validation rows. Both splits must
// contain both classes.
DipTrainResult dip_train(const std::vector<DipRow>& train, const std::vector<DipRow>& val,
                         const DipHparams& hp, std::uint64_t seed);

json dip_to_json(const DipModel& m);
DipModel dip_from_json(const json& j, const std::string& ctx);

} // namespace decoy::models
