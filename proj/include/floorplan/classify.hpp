#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "floorplan/ragbuild.hpp"

// Node classification of the RegionGraph: a pluggable classifier interface
// with a reference distance-weighted mean-aggregation message-passing
// network, training loop and metrics.
namespace floorplan::classify {

// Per-dimension z-score fitted on training graphs; zero-variance
// dimensions fall back to unit scale.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stdev;

    std::vector<double> apply(const std::vector<double>& flat) const;
};
Standardizer fit_standardizer(const std::vector<const ragbuild::RegionGraph*>& graphs);

struct ClassifierConfig {
    int hidden_width = 64;
    int layer_count = 6;  // message-passing rounds before the output layer
    int classes = ragbuild::kClassCount;
};

struct TrainConfig {
    int epochs = 40;
    double learning_rate = 0.01;
    int batch_size = 1;  // graphs per SGD step
    std::uint64_t seed = 7;
    double clip_norm = 5.0;
};

// h^0 = standardized features; h^{k+1}_v = ReLU(W^k [h^k_v || agg^k_v] + b^k)
// with agg the neighbor sum under distance weights 1/(1 + d/mean_d)
// normalized over the neighborhood; a final linear layer maps to logits.
struct ClassifierModel {
    ClassifierConfig config;
    int input_dim = 0;
    Standardizer standardizer;
    std::vector<std::vector<double>> weights;  // layer_count + 1 matrices, row-major
    std::vector<std::vector<double>> biases;
    std::string feature_mode = "normalized";
    zernike::ZernikeConfig zernike_config;
    std::uint64_t seed = 0;

    int weight_rows(std::size_t layer) const;
    int weight_cols(std::size_t layer) const;
    std::size_t parameter_count() const;
};

ClassifierModel init_model(int input_dim, const ClassifierConfig& cfg, std::uint64_t seed);

// Per-node logits in ascending node-id order.
std::vector<std::vector<double>> forward(const ClassifierModel& m,
                                         const ragbuild::RegionGraph& g);
std::map<int, ragbuild::ClassLabel> predict(const ClassifierModel& m,
                                            const ragbuild::RegionGraph& g);

// Mean cross-entropy over labeled nodes.
double graph_loss(const ClassifierModel& m, const ragbuild::RegionGraph& g);

struct TrainResult {
    ClassifierModel model;
    std::vector<double> epoch_loss;
    std::vector<double> validation_loss;  // empty without a validation set
};

TrainResult train(const std::vector<const ragbuild::RegionGraph*>& graphs,
                  const TrainConfig& cfg,
                  const std::vector<const ragbuild::RegionGraph*>& validation = {});

// Analytic vs central finite differences (step 1e-5) over a seeded
// 100-parameter sample; returns the max relative error.
double gradient_check(const ClassifierModel& m, const ragbuild::RegionGraph& g,
                      int sample_count = 100, std::uint64_t seed = 1);

struct MetricReport {
    std::array<double, ragbuild::kClassCount> f1{};
    std::array<double, ragbuild::kClassCount> iou{};
    std::array<bool, ragbuild::kClassCount> present{};
    double macro_f1_excl_outer = 0.0;
    double macro_iou_excl_outer = 0.0;
};

// Node-level per-class F1 plus area-weighted IoU over region pixel areas;
// macro averages exclude outer_space and classes absent from both label
// sets.
MetricReport evaluate(const std::map<int, ragbuild::ClassLabel>& predicted,
                      const std::map<int, ragbuild::ClassLabel>& truth,
                      const std::map<int, double>& areas);

std::string metrics_to_json(const MetricReport& r);

void save_model(const ClassifierModel& m, const std::string& path);
ClassifierModel load_model(const std::string& path);

}  // namespace floorplan::classify
