#include "core/lstm.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

namespace hydrocast {

namespace {

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& x) {
    return 1.0 / (1.0 + (-x.array()).exp());
}

void check_dims(const LstmParams& params) {
    if (params.input_dim < 1 || params.hidden_dim < 1 || params.layers.empty()) {
        throw ValidationError("LSTM parameters need positive dimensions and >= 1 layer");
    }
}

// Applies `fn(data, count)` to every parameter array, in checkpoint order.
template <typename Params, typename Fn>
void for_each_array(Params& params, Fn&& fn) {
    for (auto& layer : params.layers) {
        fn(layer.W_i.data(), layer.W_i.size());
        fn(layer.U_i.data(), layer.U_i.size());
        fn(layer.b_i.data(), layer.b_i.size());
        fn(layer.W_f.data(), layer.W_f.size());
        fn(layer.U_f.data(), layer.U_f.size());
        fn(layer.b_f.data(), layer.b_f.size());
        fn(layer.W_o.data(), layer.W_o.size());
        fn(layer.U_o.data(), layer.U_o.size());
        fn(layer.b_o.data(), layer.b_o.size());
        fn(layer.W_c.data(), layer.W_c.size());
        fn(layer.U_c.data(), layer.U_c.size());
        fn(layer.b_c.data(), layer.b_c.size());
    }
    fn(params.W_out.data(), params.W_out.size());
    fn(&params.b_out, 1);
}

struct StepCache {
    Eigen::MatrixXd x_in; // layer input at this step
    GateActivations gates;
    Eigen::MatrixXd c, h, tanh_c;
    Eigen::MatrixXd h_prev, c_prev;
};

// caches[t][l]
using ForwardCache = std::vector<std::vector<StepCache>>;

Eigen::VectorXd forward_with_cache(const LstmParams& params,
                                   const std::vector<Eigen::MatrixXd>& inputs,
                                   ForwardCache* cache) {
    check_dims(params);
    if (inputs.empty()) throw ValidationError("sequence_forward needs a non-empty input sequence");
    const int batch = static_cast<int>(inputs.front().rows());
    const int layers = params.num_layers();
    std::vector<LstmState> states(layers, LstmState::zeros(batch, params.hidden_dim));
    if (cache) cache->assign(inputs.size(), std::vector<StepCache>(layers));

    for (std::size_t t = 0; t < inputs.size(); ++t) {
        if (inputs[t].rows() != batch || inputs[t].cols() != params.input_dim) {
            throw ValidationError("input step " + std::to_string(t) + " has shape " +
                                  std::to_string(inputs[t].rows()) + "x" +
                                  std::to_string(inputs[t].cols()) + ", expected " +
                                  std::to_string(batch) + "x" + std::to_string(params.input_dim));
        }
        Eigen::MatrixXd x = inputs[t];
        for (int l = 0; l < layers; ++l) {
            GateActivations gates;
            LstmState prev = states[l];
            states[l] = cell_forward(params.layers[l], x, prev, &gates);
            if (cache) {
                StepCache& sc = (*cache)[t][l];
                sc.x_in = x;
                sc.gates = gates;
                sc.c = states[l].c;
                sc.h = states[l].h;
                sc.tanh_c = states[l].c.array().tanh();
                sc.h_prev = prev.h;
                sc.c_prev = prev.c;
            }
            x = states[l].h;
        }
    }
    return (states.back().h * params.W_out.transpose()).col(0).array() + params.b_out;
}

double global_norm(const GradientSet& grads) {
    double sq = 0.0;
    for_each_array(const_cast<GradientSet&>(grads), [&](double* data, Eigen::Index n) {
        for (Eigen::Index k = 0; k < n; ++k) sq += data[k] * data[k];
    });
    return std::sqrt(sq);
}

} // namespace

LstmState LstmState::zeros(int batch, int hidden_dim) {
    return {Eigen::MatrixXd::Zero(batch, hidden_dim), Eigen::MatrixXd::Zero(batch, hidden_dim)};
}

LstmParams init_params(int input_dim, int hidden_dim, int num_layers, std::uint64_t seed) {
    if (input_dim < 1 || hidden_dim < 1 || num_layers < 1) {
        throw ValidationError("LSTM dimensions must be positive");
    }
    std::mt19937_64 rng(seed);
    auto glorot = [&rng](Eigen::Index rows, Eigen::Index cols, int fan_in, int fan_out) {
        double r = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-r, r);
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
        return m;
    };

    LstmParams params;
    params.input_dim = input_dim;
    params.hidden_dim = hidden_dim;
    for (int l = 0; l < num_layers; ++l) {
        int d = (l == 0) ? input_dim : hidden_dim;
        LstmCellParams cell;
        cell.W_i = glorot(hidden_dim, d, d, hidden_dim);
        cell.U_i = glorot(hidden_dim, hidden_dim, hidden_dim, hidden_dim);
        cell.W_f = glorot(hidden_dim, d, d, hidden_dim);
        cell.U_f = glorot(hidden_dim, hidden_dim, hidden_dim, hidden_dim);
        cell.W_o = glorot(hidden_dim, d, d, hidden_dim);
        cell.U_o = glorot(hidden_dim, hidden_dim, hidden_dim, hidden_dim);
        cell.W_c = glorot(hidden_dim, d, d, hidden_dim);
        cell.U_c = glorot(hidden_dim, hidden_dim, hidden_dim, hidden_dim);
        cell.b_i = Eigen::VectorXd::Zero(hidden_dim);
        cell.b_f = Eigen::VectorXd::Ones(hidden_dim); // keeps early memory alive
        cell.b_o = Eigen::VectorXd::Zero(hidden_dim);
        cell.b_c = Eigen::VectorXd::Zero(hidden_dim);
        params.layers.push_back(std::move(cell));
    }
    params.W_out = glorot(1, hidden_dim, hidden_dim, 1);
    params.b_out = 0.0;
    return params;
}

GradientSet zeros_like(const LstmParams& params) {
    GradientSet g;
    g.input_dim = params.input_dim;
    g.hidden_dim = params.hidden_dim;
    for (const auto& layer : params.layers) {
        LstmCellParams z;
        z.W_i = Eigen::MatrixXd::Zero(layer.W_i.rows(), layer.W_i.cols());
        z.U_i = Eigen::MatrixXd::Zero(layer.U_i.rows(), layer.U_i.cols());
        z.W_f = Eigen::MatrixXd::Zero(layer.W_f.rows(), layer.W_f.cols());
        z.U_f = Eigen::MatrixXd::Zero(layer.U_f.rows(), layer.U_f.cols());
        z.W_o = Eigen::MatrixXd::Zero(layer.W_o.rows(), layer.W_o.cols());
        z.U_o = Eigen::MatrixXd::Zero(layer.U_o.rows(), layer.U_o.cols());
        z.W_c = Eigen::MatrixXd::Zero(layer.W_c.rows(), layer.W_c.cols());
        z.U_c = Eigen::MatrixXd::Zero(layer.U_c.rows(), layer.U_c.cols());
        z.b_i = Eigen::VectorXd::Zero(layer.b_i.size());
        z.b_f = Eigen::VectorXd::Zero(layer.b_f.size());
        z.b_o = Eigen::VectorXd::Zero(layer.b_o.size());
        z.b_c = Eigen::VectorXd::Zero(layer.b_c.size());
        g.layers.push_back(std::move(z));
    }
    g.W_out = Eigen::RowVectorXd::Zero(params.W_out.size());
    g.b_out = 0.0;
    return g;
}

LstmState cell_forward(const LstmCellParams& cell, const Eigen::MatrixXd& x,
                       const LstmState& state, GateActivations* gates_out) {
    if (x.cols() != cell.W_i.cols() || state.h.cols() != cell.U_i.cols() ||
        x.rows() != state.h.rows()) {
        throw ValidationError("cell_forward shape mismatch: x is " + std::to_string(x.rows()) +
                              "x" + std::to_string(x.cols()) + ", state is " +
                              std::to_string(state.h.rows()) + "x" + std::to_string(state.h.cols()));
    }
    Eigen::MatrixXd i = sigmoid((x * cell.W_i.transpose() + state.h * cell.U_i.transpose()).rowwise() +
                                cell.b_i.transpose());
    Eigen::MatrixXd f = sigmoid((x * cell.W_f.transpose() + state.h * cell.U_f.transpose()).rowwise() +
                                cell.b_f.transpose());
    Eigen::MatrixXd o = sigmoid((x * cell.W_o.transpose() + state.h * cell.U_o.transpose()).rowwise() +
                                cell.b_o.transpose());
    Eigen::MatrixXd g = ((x * cell.W_c.transpose() + state.h * cell.U_c.transpose()).rowwise() +
                         cell.b_c.transpose())
                            .array()
                            .tanh();
    LstmState next;
    next.c = f.array() * state.c.array() + i.array() * g.array();
    next.h = o.array() * next.c.array().tanh();
    if (gates_out) *gates_out = {i, f, o, g};
    return next;
}

Eigen::VectorXd sequence_forward(const LstmParams& params,
                                 const std::vector<Eigen::MatrixXd>& inputs) {
    return forward_with_cache(params, inputs, nullptr);
}

double sequence_forward_one(const LstmParams& params, const std::vector<Eigen::VectorXd>& inputs) {
    std::vector<Eigen::MatrixXd> rows;
    rows.reserve(inputs.size());
    for (const auto& v : inputs) rows.push_back(v.transpose());
    return sequence_forward(params, rows)(0);
}

double loss_mse(double pred, double target) {
    double d = pred - target;
    return d * d;
}

double loss_mse_batch(const Eigen::VectorXd& pred, const Eigen::VectorXd& targets) {
    if (pred.size() != targets.size()) throw ValidationError("loss_mse_batch length mismatch");
    return (pred - targets).squaredNorm() / static_cast<double>(pred.size());
}

double bptt(const LstmParams& params, const TrainingBatch& batch, GradientSet& grads) {
    if (batch.batch_size() == 0 || batch.steps() == 0) {
        throw ValidationError("bptt needs a non-empty batch");
    }
    const int B = batch.batch_size();
    const int H = params.hidden_dim;
    const int T = batch.steps();
    const int layers = params.num_layers();

    ForwardCache cache;
    Eigen::VectorXd pred = forward_with_cache(params, batch.inputs, &cache);
    double loss = loss_mse_batch(pred, batch.targets);

    grads = zeros_like(params);
    Eigen::VectorXd dy = 2.0 * (pred - batch.targets) / static_cast<double>(B);

    grads.W_out = dy.transpose() * cache[T - 1][layers - 1].h;
    grads.b_out = dy.sum();

    // dh_time/dc_time: gradient flowing into h_t / c_t from timestep t+1.
    std::vector<Eigen::MatrixXd> dh_time(layers, Eigen::MatrixXd::Zero(B, H));
    std::vector<Eigen::MatrixXd> dc_time(layers, Eigen::MatrixXd::Zero(B, H));

    for (int t = T - 1; t >= 0; --t) {
        Eigen::MatrixXd dx_above; // grad w.r.t. the layer below's h at this step
        for (int l = layers - 1; l >= 0; --l) {
            const StepCache& sc = cache[t][l];
            Eigen::MatrixXd dh = dh_time[l];
            if (l == layers - 1) {
                if (t == T - 1) dh += dy * params.W_out;
            } else {
                dh += dx_above;
            }
            const auto& g = sc.gates;
            Eigen::ArrayXXd do_ = dh.array() * sc.tanh_c.array();
            Eigen::ArrayXXd dc = dc_time[l].array() +
                                 dh.array() * g.o.array() * (1.0 - sc.tanh_c.array().square());
            Eigen::ArrayXXd di = dc * g.g.array();
            Eigen::ArrayXXd dg = dc * g.i.array();
            Eigen::ArrayXXd df = dc * sc.c_prev.array();
            dc_time[l] = (dc * g.f.array()).matrix();

            Eigen::MatrixXd da_i = (di * g.i.array() * (1.0 - g.i.array())).matrix();
            Eigen::MatrixXd da_f = (df * g.f.array() * (1.0 - g.f.array())).matrix();
            Eigen::MatrixXd da_o = (do_ * g.o.array() * (1.0 - g.o.array())).matrix();
            Eigen::MatrixXd da_g = (dg * (1.0 - g.g.array().square())).matrix();

            LstmCellParams& gl = grads.layers[l];
            const LstmCellParams& pl = params.layers[l];
            gl.W_i += da_i.transpose() * sc.x_in;
            gl.U_i += da_i.transpose() * sc.h_prev;
            gl.b_i += da_i.colwise().sum().transpose();
            gl.W_f += da_f.transpose() * sc.x_in;
            gl.U_f += da_f.transpose() * sc.h_prev;
            gl.b_f += da_f.colwise().sum().transpose();
            gl.W_o += da_o.transpose() * sc.x_in;
            gl.U_o += da_o.transpose() * sc.h_prev;
            gl.b_o += da_o.colwise().sum().transpose();
            gl.W_c += da_g.transpose() * sc.x_in;
            gl.U_c += da_g.transpose() * sc.h_prev;
            gl.b_c += da_g.colwise().sum().transpose();

            dh_time[l] = da_i * pl.U_i + da_f * pl.U_f + da_o * pl.U_o + da_g * pl.U_c;
            if (l > 0) dx_above = da_i * pl.W_i + da_f * pl.W_f + da_o * pl.W_o + da_g * pl.W_c;
        }
    }
    return loss;
}

namespace {

using MatLd = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

MatLd sigmoid_ld(const MatLd& x) {
    return (1.0L / (1.0L + (-x.array()).exp())).matrix();
}

// Extended-precision loss evaluation for the finite-difference oracle;
// double roundoff in the loss would otherwise swamp small gradients.
long double sequence_loss_ld(const LstmParams& params, const TrainingBatch& batch) {
    const int B = batch.batch_size();
    const int H = params.hidden_dim;
    std::vector<MatLd> h(params.layers.size(), MatLd::Zero(B, H));
    std::vector<MatLd> c(params.layers.size(), MatLd::Zero(B, H));
    for (const auto& input : batch.inputs) {
        MatLd x = input.cast<long double>();
        for (std::size_t l = 0; l < params.layers.size(); ++l) {
            const auto& cell = params.layers[l];
            MatLd wi = cell.W_i.cast<long double>(), ui = cell.U_i.cast<long double>();
            MatLd wf = cell.W_f.cast<long double>(), uf = cell.U_f.cast<long double>();
            MatLd wo = cell.W_o.cast<long double>(), uo = cell.U_o.cast<long double>();
            MatLd wc = cell.W_c.cast<long double>(), uc = cell.U_c.cast<long double>();
            MatLd i = sigmoid_ld((x * wi.transpose() + h[l] * ui.transpose()).rowwise() +
                                 cell.b_i.cast<long double>().transpose());
            MatLd f = sigmoid_ld((x * wf.transpose() + h[l] * uf.transpose()).rowwise() +
                                 cell.b_f.cast<long double>().transpose());
            MatLd o = sigmoid_ld((x * wo.transpose() + h[l] * uo.transpose()).rowwise() +
                                 cell.b_o.cast<long double>().transpose());
            MatLd g = ((x * wc.transpose() + h[l] * uc.transpose()).rowwise() +
                       cell.b_c.cast<long double>().transpose())
                          .array()
                          .tanh()
                          .matrix();
            c[l] = (f.array() * c[l].array() + i.array() * g.array()).matrix();
            h[l] = (o.array() * c[l].array().tanh()).matrix();
            x = h[l];
        }
    }
    MatLd pred = h.back() * params.W_out.cast<long double>().transpose();
    long double loss = 0.0L;
    for (int r = 0; r < B; ++r) {
        long double d = pred(r, 0) + static_cast<long double>(params.b_out) -
                        static_cast<long double>(batch.targets(r));
        loss += d * d;
    }
    return loss / B;
}

} // namespace

double grad_check(const LstmParams& params, const TrainingBatch& batch, double step) {
    GradientSet analytic;
    bptt(params, batch, analytic);

    LstmParams work = params;
    double worst = 0.0;
    std::vector<std::pair<double*, Eigen::Index>> work_arrays, grad_arrays;
    for_each_array(work, [&](double* d, Eigen::Index n) { work_arrays.emplace_back(d, n); });
    for_each_array(analytic, [&](double* d, Eigen::Index n) { grad_arrays.emplace_back(d, n); });

    for (std::size_t a = 0; a < work_arrays.size(); ++a) {
        auto [data, n] = work_arrays[a];
        auto [gdata, gn] = grad_arrays[a];
        for (Eigen::Index k = 0; k < n; ++k) {
            double saved = data[k];
            data[k] = saved + step;
            long double lp = sequence_loss_ld(work, batch);
            data[k] = saved - step;
            long double lm = sequence_loss_ld(work, batch);
            data[k] = saved;
            double numeric = static_cast<double>((lp - lm) / (2.0L * static_cast<long double>(step)));
            double denom = std::max(1e-12, std::abs(gdata[k]) + std::abs(numeric));
            worst = std::max(worst, std::abs(gdata[k] - numeric) / denom);
        }
    }
    return worst;
}

TrainResult train(const TrainingConfig& config, int input_dim, const TrainingBatch& batch) {
    if (batch.batch_size() < 1) throw ValidationError("training needs at least one sample");
    if (config.epochs < 0 || config.learning_rate <= 0.0 || config.clip_norm <= 0.0) {
        throw ValidationError("training config values must be positive");
    }
    TrainResult result;
    result.params = init_params(input_dim, config.hidden_dim, config.num_layers, config.seed);
    if (config.epochs == 0) return result;

    GradientSet m = zeros_like(result.params);
    GradientSet v = zeros_like(result.params);
    result.loss_curve.reserve(config.epochs);

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        GradientSet grads;
        double loss = bptt(result.params, batch, grads);
        if (!std::isfinite(loss)) {
            throw NumericError("training diverged (non-finite loss) at epoch " +
                               std::to_string(epoch));
        }
        result.loss_curve.push_back(loss);

        double norm = global_norm(grads);
        double scale = (norm > config.clip_norm) ? config.clip_norm / norm : 1.0;

        std::vector<std::pair<double*, Eigen::Index>> p_arr, g_arr, m_arr, v_arr;
        for_each_array(result.params, [&](double* d, Eigen::Index n) { p_arr.emplace_back(d, n); });
        for_each_array(grads, [&](double* d, Eigen::Index n) { g_arr.emplace_back(d, n); });
        for_each_array(m, [&](double* d, Eigen::Index n) { m_arr.emplace_back(d, n); });
        for_each_array(v, [&](double* d, Eigen::Index n) { v_arr.emplace_back(d, n); });

        double bc1 = 1.0 - std::pow(config.beta1, epoch);
        double bc2 = 1.0 - std::pow(config.beta2, epoch);
        for (std::size_t a = 0; a < p_arr.size(); ++a) {
            double* p = p_arr[a].first;
            double* g = g_arr[a].first;
            double* mm = m_arr[a].first;
            double* vv = v_arr[a].first;
            for (Eigen::Index k = 0; k < p_arr[a].second; ++k) {
                double gk = g[k] * scale;
                mm[k] = config.beta1 * mm[k] + (1.0 - config.beta1) * gk;
                vv[k] = config.beta2 * vv[k] + (1.0 - config.beta2) * gk * gk;
                double mhat = mm[k] / bc1;
                double vhat = vv[k] / bc2;
                p[k] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.eps);
            }
        }
    }
    return result;
}

std::vector<double> predict_horizon(const LstmParams& params, const std::vector<double>& history,
                                    const std::vector<std::vector<double>>& aux, int horizon) {
    check_dims(params);
    const std::size_t L = history.size();
    if (L < 1) throw ValidationError("predict_horizon needs a non-empty history window");
    if (horizon < 1) throw ValidationError("forecast horizon must be >= 1");
    const std::size_t aux_width = static_cast<std::size_t>(params.input_dim) - 1;
    const std::size_t positions = L + static_cast<std::size_t>(horizon) - 1;
    if (aux_width > 0) {
        if (aux.size() < positions) {
            throw ValidationError("predict_horizon needs auxiliary features for " +
                                  std::to_string(positions) + " positions, got " +
                                  std::to_string(aux.size()));
        }
        for (const auto& a : aux) {
            if (a.size() != aux_width) {
                throw ValidationError("auxiliary feature width mismatch: expected " +
                                      std::to_string(aux_width));
            }
        }
    }

    std::vector<double> values = history; // scaled, grows with each prediction
    std::vector<double> out;
    out.reserve(horizon);
    for (int s = 0; s < horizon; ++s) {
        std::vector<Eigen::MatrixXd> inputs;
        inputs.reserve(L);
        for (std::size_t t = 0; t < L; ++t) {
            std::size_t pos = static_cast<std::size_t>(s) + t;
            Eigen::MatrixXd x(1, params.input_dim);
            x(0, 0) = values[pos];
            for (std::size_t a = 0; a < aux_width; ++a) x(0, 1 + a) = aux[pos][a];
            inputs.push_back(x);
        }
        double pred = sequence_forward(params, inputs)(0);
        pred = std::clamp(pred, 0.0, 1.0); // feedback stays in scaled range
        out.push_back(pred);
        values.push_back(pred);
    }
    return out;
}

// --- checkpoint -----------------------------------------------------------

namespace {

constexpr const char* kCheckpointMagic = "hydrocast-lstm v1";

const char* kSectionNames[] = {"W_i", "U_i", "b_i", "W_f", "U_f", "b_f",
                               "W_o", "U_o", "b_o", "W_c", "U_c", "b_c"};

void write_matrix(std::ostream& out, const std::string& name, const Eigen::MatrixXd& m) {
    out << name << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (!std::isfinite(m(r, c))) {
                throw CheckpointValueError("non-finite entry in " + name);
            }
            if (c) out << ' ';
            out << std::setprecision(17) << m(r, c);
        }
        out << '\n';
    }
}

Eigen::MatrixXd read_matrix(std::istream& in, const std::string& expect_name, Eigen::Index rows,
                            Eigen::Index cols, const std::string& path) {
    std::string name;
    if (!(in >> name)) throw CheckpointShapeError(path + ": truncated before section " + expect_name);
    if (name != expect_name) {
        throw CheckpointShapeError(path + ": expected section '" + expect_name + "', found '" +
                                   name + "'");
    }
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            std::string tok;
            if (!(in >> tok)) {
                throw CheckpointShapeError(path + ": truncated inside section " + expect_name);
            }
            char* end = nullptr;
            double v = std::strtod(tok.c_str(), &end); // istream >> rejects "nan"
            if (end == tok.c_str() || *end != '\0') {
                throw CheckpointShapeError(path + ": bad value '" + tok + "' in section " +
                                           expect_name);
            }
            if (!std::isfinite(v)) {
                throw CheckpointValueError(path + ": non-finite entry in " + expect_name);
            }
            m(r, c) = v;
        }
    }
    return m;
}

} // namespace

void save_checkpoint(const LstmParams& params, const std::string& path) {
    check_dims(params);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write checkpoint " + path);
    out << kCheckpointMagic << '\n';
    out << params.input_dim << ' ' << params.hidden_dim << ' ' << params.num_layers() << '\n';
    for (int l = 0; l < params.num_layers(); ++l) {
        const LstmCellParams& cell = params.layers[l];
        const Eigen::MatrixXd* mats[] = {&cell.W_i, &cell.U_i, nullptr, &cell.W_f, &cell.U_f,
                                         nullptr,   &cell.W_o, &cell.U_o, nullptr, &cell.W_c,
                                         &cell.U_c, nullptr};
        const Eigen::VectorXd* vecs[] = {&cell.b_i, &cell.b_f, &cell.b_o, &cell.b_c};
        int v = 0;
        for (int s = 0; s < 12; ++s) {
            if (mats[s]) {
                write_matrix(out, kSectionNames[s], *mats[s]);
            } else {
                write_matrix(out, kSectionNames[s], vecs[v++]->transpose());
            }
        }
    }
    write_matrix(out, "W_out", params.W_out);
    Eigen::MatrixXd b(1, 1);
    b(0, 0) = params.b_out;
    write_matrix(out, "b_out", b);
    if (!out) throw IoError("write failure on checkpoint " + path);
}

LstmParams load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open checkpoint " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != kCheckpointMagic) {
        throw CheckpointVersionError(path + ": unsupported checkpoint version line '" + magic + "'");
    }
    int input_dim = 0, hidden_dim = 0, layers = 0;
    if (!(in >> input_dim >> hidden_dim >> layers)) {
        throw CheckpointShapeError(path + ": malformed dimension header");
    }
    if (input_dim < 1 || hidden_dim < 1 || layers < 1 || hidden_dim > 100000) {
        throw CheckpointShapeError(path + ": implausible dimensions " + std::to_string(input_dim) +
                                   " " + std::to_string(hidden_dim) + " " + std::to_string(layers));
    }
    LstmParams params;
    params.input_dim = input_dim;
    params.hidden_dim = hidden_dim;
    for (int l = 0; l < layers; ++l) {
        int d = (l == 0) ? input_dim : hidden_dim;
        LstmCellParams cell;
        cell.W_i = read_matrix(in, "W_i", hidden_dim, d, path);
        cell.U_i = read_matrix(in, "U_i", hidden_dim, hidden_dim, path);
        cell.b_i = read_matrix(in, "b_i", 1, hidden_dim, path).transpose();
        cell.W_f = read_matrix(in, "W_f", hidden_dim, d, path);
        cell.U_f = read_matrix(in, "U_f", hidden_dim, hidden_dim, path);
        cell.b_f = read_matrix(in, "b_f", 1, hidden_dim, path).transpose();
        cell.W_o = read_matrix(in, "W_o", hidden_dim, d, path);
        cell.U_o = read_matrix(in, "U_o", hidden_dim, hidden_dim, path);
        cell.b_o = read_matrix(in, "b_o", 1, hidden_dim, path).transpose();
        cell.W_c = read_matrix(in, "W_c", hidden_dim, d, path);
        cell.U_c = read_matrix(in, "U_c", hidden_dim, hidden_dim, path);
        cell.b_c = read_matrix(in, "b_c", 1, hidden_dim, path).transpose();
        params.layers.push_back(std::move(cell));
    }
    params.W_out = read_matrix(in, "W_out", 1, hidden_dim, path);
    params.b_out = read_matrix(in, "b_out", 1, 1, path)(0, 0);
    return params;
}

} // namespace hydrocast
