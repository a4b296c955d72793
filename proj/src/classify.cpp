#include "floorplan/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "floorplan/kernels.hpp"

namespace floorplan::classify {

using nlohmann::json;
using ragbuild::ClassLabel;
using ragbuild::RegionGraph;

std::vector<double> Standardizer::apply(const std::vector<double>& flat) const {
    if (flat.size() != mean.size())
        throw std::invalid_argument("feature width mismatch with standardizer");
    std::vector<double> out(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i)
        out[i] = (flat[i] - mean[i]) / stdev[i];
    return out;
}

Standardizer fit_standardizer(const std::vector<const RegionGraph*>& graphs) {
    if (graphs.empty()) throw std::invalid_argument("no graphs to fit standardizer");
    std::size_t dim = 0;
    for (const RegionGraph* g : graphs)
        for (const auto& [id, node] : g->nodes) {
            dim = node.features.flat().size();
            break;
        }
    if (dim == 0) throw std::invalid_argument("graphs have no nodes");

    Standardizer s;
    s.mean.assign(dim, 0.0);
    s.stdev.assign(dim, 0.0);
    std::size_t n = 0;
    for (const RegionGraph* g : graphs)
        for (const auto& [id, node] : g->nodes) {
            const auto f = node.features.flat();
            if (f.size() != dim) throw std::invalid_argument("inconsistent feature width");
            for (std::size_t i = 0; i < dim; ++i) s.mean[i] += f[i];
            ++n;
        }
    for (double& m : s.mean) m /= static_cast<double>(n);
    for (const RegionGraph* g : graphs)
        for (const auto& [id, node] : g->nodes) {
            const auto f = node.features.flat();
            for (std::size_t i = 0; i < dim; ++i) {
                const double d = f[i] - s.mean[i];
                s.stdev[i] += d * d;
            }
        }
    for (double& v : s.stdev) {
        v = std::sqrt(v / static_cast<double>(n));
        if (v < 1e-12) v = 1.0;
    }
    return s;
}

int ClassifierModel::weight_rows(std::size_t layer) const {
    return layer < static_cast<std::size_t>(config.layer_count) ? config.hidden_width
                                                                : config.classes;
}

int ClassifierModel::weight_cols(std::size_t layer) const {
    if (layer == 0) return 2 * input_dim;
    if (layer < static_cast<std::size_t>(config.layer_count)) return 2 * config.hidden_width;
    return config.hidden_width;
}

std::size_t ClassifierModel::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights.size(); ++l)
        n += weights[l].size() + biases[l].size();
    return n;
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return std::ldexp(static_cast<double>(rng()), -64);
}

}  // namespace

ClassifierModel init_model(int input_dim, const ClassifierConfig& cfg, std::uint64_t seed) {
    if (cfg.layer_count < 1) throw std::invalid_argument("layer_count must be >= 1");
    ClassifierModel m;
    m.config = cfg;
    m.input_dim = input_dim;
    m.seed = seed;
    m.standardizer.mean.assign(input_dim, 0.0);
    m.standardizer.stdev.assign(input_dim, 1.0);
    std::mt19937_64 rng(seed);
    const std::size_t layers = static_cast<std::size_t>(cfg.layer_count) + 1;
    m.weights.resize(layers);
    m.biases.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        const int rows = m.weight_rows(l), cols = m.weight_cols(l);
        const double limit = std::sqrt(6.0 / (rows + cols));
        m.weights[l].resize(static_cast<std::size_t>(rows) * cols);
        for (double& w : m.weights[l]) w = (2.0 * uniform01(rng) - 1.0) * limit;
        m.biases[l].assign(rows, 0.0);
    }
    return m;
}

namespace {

// graph unpacked for the forward/backward passes; node order is ascending
// id, neighbor order canonicalized on (weight, input features) so node
// relabeling cannot change summation order
struct Prepared {
    int n = 0;
    int dim = 0;
    std::vector<int> ids;
    std::vector<std::vector<double>> x;
    std::vector<std::vector<std::pair<int, double>>> nbrs;  // (node index, normalized weight)
    std::vector<int> labels;                                // -1 when unlabeled
};

Prepared prepare(const ClassifierModel& m, const RegionGraph& g) {
    Prepared p;
    p.n = static_cast<int>(g.nodes.size());
    p.ids.reserve(p.n);
    std::map<int, int> index;
    for (const auto& [id, node] : g.nodes) {
        index[id] = static_cast<int>(p.ids.size());
        p.ids.push_back(id);
    }
    p.x.resize(p.n);
    p.labels.assign(p.n, -1);
    for (const auto& [id, node] : g.nodes) {
        const int i = index[id];
        p.x[i] = m.standardizer.apply(node.features.flat());
        if (node.label) p.labels[i] = static_cast<int>(*node.label);
    }
    p.dim = p.n > 0 ? static_cast<int>(p.x[0].size()) : 0;
    if (p.dim != m.input_dim) throw std::invalid_argument("feature width mismatch with model");

    const double mean_w = g.mean_edge_weight();
    p.nbrs.resize(p.n);
    for (const auto& e : g.edges) {
        const auto ia = index.find(e.a);
        const auto ib = index.find(e.b);
        if (ia == index.end() || ib == index.end())
            throw std::invalid_argument("edge references unknown node");
        const double w = 1.0 / (1.0 + e.weight / mean_w);
        p.nbrs[ia->second].emplace_back(ib->second, w);
        p.nbrs[ib->second].emplace_back(ia->second, w);
    }
    for (int v = 0; v < p.n; ++v) {
        auto& lst = p.nbrs[v];
        std::stable_sort(lst.begin(), lst.end(), [&](const auto& l, const auto& r) {
            if (l.second != r.second) return l.second > r.second;
            return p.x[l.first] < p.x[r.first];
        });
        double total = 0.0;
        for (const auto& [u, w] : lst) total += w;
        if (total > 0.0)
            for (auto& [u, w] : lst) w /= total;
    }
    return p;
}

struct ForwardState {
    // per message layer: input h, aggregated neighbor term, concat, pre-activation
    std::vector<std::vector<std::vector<double>>> h;    // layer_count+1 levels of n x dim
    std::vector<std::vector<std::vector<double>>> agg;  // layer_count levels
    std::vector<std::vector<std::vector<double>>> z;    // layer_count levels (pre-ReLU)
    std::vector<std::vector<double>> logits;            // n x classes
};

ForwardState run_forward(const ClassifierModel& m, const Prepared& p) {
    const int layer_count = m.config.layer_count;
    ForwardState st;
    st.h.resize(layer_count + 1);
    st.agg.resize(layer_count);
    st.z.resize(layer_count);
    st.h[0] = p.x;
    for (int k = 0; k < layer_count; ++k) {
        const int in_dim = k == 0 ? m.input_dim : m.config.hidden_width;
        const int out_dim = m.config.hidden_width;
        st.agg[k].assign(p.n, std::vector<double>(in_dim, 0.0));
        st.z[k].assign(p.n, std::vector<double>(out_dim, 0.0));
        st.h[k + 1].assign(p.n, std::vector<double>(out_dim, 0.0));
        std::vector<double> cat(2 * in_dim);
        for (int v = 0; v < p.n; ++v) {
            auto& agg = st.agg[k][v];
            for (const auto& [u, w] : p.nbrs[v])
                for (int d = 0; d < in_dim; ++d) agg[d] += w * st.h[k][u][d];
            std::copy(st.h[k][v].begin(), st.h[k][v].end(), cat.begin());
            std::copy(agg.begin(), agg.end(), cat.begin() + in_dim);
            kernels::matvec(m.weights[k].data(), cat.data(), st.z[k][v].data(), out_dim,
                            2 * in_dim);
            for (int d = 0; d < out_dim; ++d) {
                const double zv = st.z[k][v][d] + m.biases[k][d];
                st.z[k][v][d] = zv;
                st.h[k + 1][v][d] = zv > 0.0 ? zv : 0.0;
            }
        }
    }
    const std::size_t out_layer = static_cast<std::size_t>(layer_count);
    st.logits.assign(p.n, std::vector<double>(m.config.classes, 0.0));
    for (int v = 0; v < p.n; ++v) {
        kernels::matvec(m.weights[out_layer].data(), st.h[layer_count][v].data(),
                        st.logits[v].data(), m.config.classes, m.config.hidden_width);
        for (int c = 0; c < m.config.classes; ++c) st.logits[v][c] += m.biases[out_layer][c];
    }
    return st;
}

double softmax_loss(const std::vector<std::vector<double>>& logits,
                    const std::vector<int>& labels,
                    std::vector<std::vector<double>>* dlogits) {
    int labeled = 0;
    for (int y : labels) labeled += y >= 0;
    if (labeled == 0) throw std::invalid_argument("graph has no labeled nodes");
    double loss = 0.0;
    if (dlogits) dlogits->assign(logits.size(), std::vector<double>(logits[0].size(), 0.0));
    for (std::size_t v = 0; v < logits.size(); ++v) {
        if (labels[v] < 0) continue;
        const auto& l = logits[v];
        const double mx = *std::max_element(l.begin(), l.end());
        double sum = 0.0;
        for (double s : l) sum += std::exp(s - mx);
        const double logp = l[labels[v]] - mx - std::log(sum);
        loss -= logp;
        if (dlogits) {
            auto& d = (*dlogits)[v];
            for (std::size_t c = 0; c < l.size(); ++c)
                d[c] = std::exp(l[c] - mx) / sum / labeled;
            d[labels[v]] -= 1.0 / labeled;
        }
    }
    return loss / labeled;
}

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    explicit Gradients(const ClassifierModel& m) {
        weights.resize(m.weights.size());
        biases.resize(m.biases.size());
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            weights[l].assign(m.weights[l].size(), 0.0);
            biases[l].assign(m.biases[l].size(), 0.0);
        }
    }

    void add_scaled(const Gradients& o, double s) {
        for (std::size_t l = 0; l < weights.size(); ++l) {
            for (std::size_t i = 0; i < weights[l].size(); ++i) weights[l][i] += s * o.weights[l][i];
            for (std::size_t i = 0; i < biases[l].size(); ++i) biases[l][i] += s * o.biases[l][i];
        }
    }

    void scale(double s) {
        for (auto& w : weights)
            for (double& v : w) v *= s;
        for (auto& b : biases)
            for (double& v : b) v *= s;
    }

    double norm() const {
        double acc = 0.0;
        for (const auto& w : weights)
            for (double v : w) acc += v * v;
        for (const auto& b : biases)
            for (double v : b) acc += v * v;
        return std::sqrt(acc);
    }
};

void outer_add(std::vector<double>& dw, const double* dz, const double* in, int rows,
               int cols) {
    for (int i = 0; i < rows; ++i) {
        const double g = dz[i];
        if (g == 0.0) continue;
        double* row = dw.data() + static_cast<std::size_t>(i) * cols;
        for (int j = 0; j < cols; ++j) row[j] += g * in[j];
    }
}

double run_backward(const ClassifierModel& m, const Prepared& p, Gradients& grads) {
    const ForwardState st = run_forward(m, p);
    std::vector<std::vector<double>> dlogits;
    const double loss = softmax_loss(st.logits, p.labels, &dlogits);

    const int layer_count = m.config.layer_count;
    const std::size_t out_layer = static_cast<std::size_t>(layer_count);
    const int hidden = m.config.hidden_width;

    std::vector<std::vector<double>> dh(p.n, std::vector<double>(hidden, 0.0));
    for (int v = 0; v < p.n; ++v) {
        outer_add(grads.weights[out_layer], dlogits[v].data(), st.h[layer_count][v].data(),
                  m.config.classes, hidden);
        for (int c = 0; c < m.config.classes; ++c) grads.biases[out_layer][c] += dlogits[v][c];
        kernels::matvec_t_add(m.weights[out_layer].data(), dlogits[v].data(), dh[v].data(),
                              m.config.classes, hidden);
    }

    for (int k = layer_count - 1; k >= 0; --k) {
        const int in_dim = k == 0 ? m.input_dim : hidden;
        const int out_dim = hidden;
        std::vector<std::vector<double>> dh_prev(p.n, std::vector<double>(in_dim, 0.0));
        std::vector<double> cat(2 * in_dim), dcat(2 * in_dim), dz(out_dim);
        for (int v = 0; v < p.n; ++v) {
            for (int d = 0; d < out_dim; ++d)
                dz[d] = st.z[k][v][d] > 0.0 ? dh[v][d] : 0.0;
            std::copy(st.h[k][v].begin(), st.h[k][v].end(), cat.begin());
            std::copy(st.agg[k][v].begin(), st.agg[k][v].end(), cat.begin() + in_dim);
            outer_add(grads.weights[k], dz.data(), cat.data(), out_dim, 2 * in_dim);
            for (int d = 0; d < out_dim; ++d) grads.biases[k][d] += dz[d];
            std::fill(dcat.begin(), dcat.end(), 0.0);
            kernels::matvec_t_add(m.weights[k].data(), dz.data(), dcat.data(), out_dim,
                                  2 * in_dim);
            for (int d = 0; d < in_dim; ++d) dh_prev[v][d] += dcat[d];
            // aggregation transpose: route the agg half back to neighbors
            for (const auto& [u, w] : p.nbrs[v])
                for (int d = 0; d < in_dim; ++d) dh_prev[u][d] += w * dcat[in_dim + d];
        }
        dh = std::move(dh_prev);
    }
    return loss;
}

void sgd_step(ClassifierModel& m, Gradients& grads, double lr, double clip_norm) {
    if (clip_norm > 0.0) {
        const double n = grads.norm();
        if (n > clip_norm) {
            const double s = clip_norm / n;
            for (auto& w : grads.weights)
                for (double& v : w) v *= s;
            for (auto& b : grads.biases)
                for (double& v : b) v *= s;
        }
    }
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        for (std::size_t i = 0; i < m.weights[l].size(); ++i)
            m.weights[l][i] -= lr * grads.weights[l][i];
        for (std::size_t i = 0; i < m.biases[l].size(); ++i)
            m.biases[l][i] -= lr * grads.biases[l][i];
    }
}

}  // namespace

std::vector<std::vector<double>> forward(const ClassifierModel& m, const RegionGraph& g) {
    const Prepared p = prepare(m, g);
    return run_forward(m, p).logits;
}

std::map<int, ClassLabel> predict(const ClassifierModel& m, const RegionGraph& g) {
    const Prepared p = prepare(m, g);
    const ForwardState st = run_forward(m, p);
    std::map<int, ClassLabel> out;
    for (int v = 0; v < p.n; ++v) {
        const auto& l = st.logits[v];
        const int arg = static_cast<int>(std::max_element(l.begin(), l.end()) - l.begin());
        out[p.ids[v]] = static_cast<ClassLabel>(arg);
    }
    return out;
}

double graph_loss(const ClassifierModel& m, const RegionGraph& g) {
    const Prepared p = prepare(m, g);
    const ForwardState st = run_forward(m, p);
    return softmax_loss(st.logits, p.labels, nullptr);
}

TrainResult train(const std::vector<const RegionGraph*>& graphs, const TrainConfig& cfg,
                  const std::vector<const RegionGraph*>& validation) {
    if (graphs.empty()) throw std::invalid_argument("no training graphs");
    if (cfg.epochs < 1 || cfg.learning_rate <= 0.0)
        throw std::invalid_argument("bad training configuration");

    const Standardizer stz = fit_standardizer(graphs);
    const int input_dim = static_cast<int>(stz.mean.size());
    ClassifierConfig mc;
    ClassifierModel model = init_model(input_dim, mc, cfg.seed);
    model.standardizer = stz;
    model.feature_mode = graphs.front()->feature_mode;
    model.zernike_config = graphs.front()->zernike_config;

    std::vector<Prepared> prepared;
    prepared.reserve(graphs.size());
    for (const RegionGraph* g : graphs) prepared.push_back(prepare(model, *g));
    std::vector<Prepared> val_prepared;
    for (const RegionGraph* g : validation) val_prepared.push_back(prepare(model, *g));

    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::size_t> order(prepared.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    TrainResult result;
    ClassifierModel best = model;
    double best_val = std::numeric_limits<double>::infinity();

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // Fisher-Yates with the session rng keeps runs bit-reproducible
        for (std::size_t i = order.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform01(rng) * i);
            std::swap(order[i - 1], order[std::min(j, i - 1)]);
        }
        double epoch_loss = 0.0;
        Gradients batch(model);
        int in_batch = 0;
        for (std::size_t gi : order) {
            Gradients grads(model);
            epoch_loss += run_backward(model, prepared[gi], grads);
            batch.add_scaled(grads, 1.0);
            if (++in_batch == cfg.batch_size) {
                batch.scale(1.0 / in_batch);
                sgd_step(model, batch, cfg.learning_rate, cfg.clip_norm);
                batch = Gradients(model);
                in_batch = 0;
            }
        }
        if (in_batch > 0) {
            batch.scale(1.0 / in_batch);
            sgd_step(model, batch, cfg.learning_rate, cfg.clip_norm);
        }
        result.epoch_loss.push_back(epoch_loss / static_cast<double>(prepared.size()));
        if (!val_prepared.empty()) {
            double val = 0.0;
            for (const Prepared& p : val_prepared)
                val += softmax_loss(run_forward(model, p).logits, p.labels, nullptr);
            val /= static_cast<double>(val_prepared.size());
            result.validation_loss.push_back(val);
            if (val < best_val) {
                best_val = val;
                best = model;
            }
        }
    }
    result.model = val_prepared.empty() ? std::move(model) : std::move(best);
    return result;
}

double gradient_check(const ClassifierModel& m, const RegionGraph& g, int sample_count,
                      std::uint64_t seed) {
    ClassifierModel work = m;
    const Prepared p = prepare(work, g);
    Gradients grads(work);
    run_backward(work, p, grads);

    std::vector<double*> params;
    std::vector<double> analytic;
    for (std::size_t l = 0; l < work.weights.size(); ++l) {
        for (std::size_t i = 0; i < work.weights[l].size(); ++i) {
            params.push_back(&work.weights[l][i]);
            analytic.push_back(grads.weights[l][i]);
        }
        for (std::size_t i = 0; i < work.biases[l].size(); ++i) {
            params.push_back(&work.biases[l][i]);
            analytic.push_back(grads.biases[l][i]);
        }
    }
    std::mt19937_64 rng(seed);
    double max_err = 0.0;
    const double step = 1e-5;
    for (int s = 0; s < sample_count; ++s) {
        const std::size_t idx =
            static_cast<std::size_t>(uniform01(rng) * static_cast<double>(params.size()));
        double* param = params[std::min(idx, params.size() - 1)];
        const double orig = *param;
        *param = orig + step;
        const double up = softmax_loss(run_forward(work, p).logits, p.labels, nullptr);
        *param = orig - step;
        const double down = softmax_loss(run_forward(work, p).logits, p.labels, nullptr);
        *param = orig;
        const double numeric = (up - down) / (2.0 * step);
        const double a = analytic[std::min(idx, params.size() - 1)];
        const double err = std::abs(a - numeric) / std::max(1e-6, std::abs(a) + std::abs(numeric));
        max_err = std::max(max_err, err);
    }
    return max_err;
}

MetricReport evaluate(const std::map<int, ClassLabel>& predicted,
                      const std::map<int, ClassLabel>& truth,
                      const std::map<int, double>& areas) {
    constexpr int k = ragbuild::kClassCount;
    std::array<double, k> tp{}, fp{}, fn{};
    std::array<double, k> inter_area{}, union_area{};
    for (const auto& [id, t] : truth) {
        const auto it = predicted.find(id);
        if (it == predicted.end()) throw std::invalid_argument("prediction missing node");
        const ClassLabel pr = it->second;
        const int ti = static_cast<int>(t), pi = static_cast<int>(pr);
        const auto ia = areas.find(id);
        const double area = ia != areas.end() ? ia->second : 0.0;
        if (ti == pi) {
            tp[ti] += 1.0;
            inter_area[ti] += area;
            union_area[ti] += area;
        } else {
            fn[ti] += 1.0;
            fp[pi] += 1.0;
            union_area[ti] += area;
            union_area[pi] += area;
        }
    }
    MetricReport r;
    double f1_sum = 0.0, iou_sum = 0.0;
    int f1_n = 0;
    for (int c = 0; c < k; ++c) {
        r.present[c] = tp[c] + fp[c] + fn[c] > 0.0;
        const double precision = tp[c] + fp[c] > 0 ? tp[c] / (tp[c] + fp[c]) : 0.0;
        const double recall = tp[c] + fn[c] > 0 ? tp[c] / (tp[c] + fn[c]) : 0.0;
        r.f1[c] = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
        r.iou[c] = union_area[c] > 0 ? inter_area[c] / union_area[c] : 0.0;
        if (c != static_cast<int>(ClassLabel::outer_space) && r.present[c]) {
            f1_sum += r.f1[c];
            iou_sum += r.iou[c];
            ++f1_n;
        }
    }
    if (f1_n > 0) {
        r.macro_f1_excl_outer = f1_sum / f1_n;
        r.macro_iou_excl_outer = iou_sum / f1_n;
    }
    return r;
}

std::string metrics_to_json(const MetricReport& r) {
    json per_class = json::object();
    for (int c = 0; c < ragbuild::kClassCount; ++c) {
        per_class[ragbuild::class_name(static_cast<ClassLabel>(c))] = {
            {"f1", r.f1[c]}, {"iou", r.iou[c]}, {"present", r.present[c]}};
    }
    const json doc{{"format_version", 1},
                   {"per_class", per_class},
                   {"macro_f1_excl_outer", r.macro_f1_excl_outer},
                   {"macro_iou_excl_outer", r.macro_iou_excl_outer}};
    return doc.dump(2);
}

void save_model(const ClassifierModel& m, const std::string& path) {
    json classes = json::array();
    for (int i = 0; i < ragbuild::kClassCount; ++i)
        classes.push_back(ragbuild::class_name(static_cast<ClassLabel>(i)));
    const json doc{{"format_version", 1},
                   {"input_dim", m.input_dim},
                   {"hidden_width", m.config.hidden_width},
                   {"layer_count", m.config.layer_count},
                   {"classes", classes},
                   {"feature_mode", m.feature_mode},
                   {"zernike",
                    {{"n_max", m.zernike_config.n_max},
                     {"c", m.zernike_config.c},
                     {"grid", m.zernike_config.grid}}},
                   {"seed", m.seed},
                   {"standardizer", {{"mean", m.standardizer.mean}, {"stdev", m.standardizer.stdev}}},
                   {"weights", m.weights},
                   {"biases", m.biases}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << doc.dump();
    if (!out) throw std::runtime_error(path + ": write failed");
}

ClassifierModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    json doc;
    in >> doc;
    if (doc.at("format_version").get<int>() != 1)
        throw std::runtime_error("unsupported model format_version");
    ClassifierModel m;
    m.input_dim = doc.at("input_dim").get<int>();
    m.config.hidden_width = doc.at("hidden_width").get<int>();
    m.config.layer_count = doc.at("layer_count").get<int>();
    m.feature_mode = doc.value("feature_mode", "normalized");
    m.zernike_config.n_max = doc["zernike"].value("n_max", 6);
    m.zernike_config.c = doc["zernike"].value("c", 1.0 / 80.0);
    m.zernike_config.grid = doc["zernike"].value("grid", 256);
    m.seed = doc.value("seed", 0ull);
    m.standardizer.mean = doc.at("standardizer").at("mean").get<std::vector<double>>();
    m.standardizer.stdev = doc.at("standardizer").at("stdev").get<std::vector<double>>();
    m.weights = doc.at("weights").get<std::vector<std::vector<double>>>();
    m.biases = doc.at("biases").get<std::vector<std::vector<double>>>();
    if (m.weights.size() != static_cast<std::size_t>(m.config.layer_count) + 1)
        throw std::runtime_error("model weight count mismatch");
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        const std::size_t expect =
            static_cast<std::size_t>(m.weight_rows(l)) * m.weight_cols(l);
        if (m.weights[l].size() != expect || m.biases[l].size() !=
                                                 static_cast<std::size_t>(m.weight_rows(l)))
            throw std::runtime_error("model weight shape mismatch");
    }
    return m;
}

}  // namespace floorplan::classify
