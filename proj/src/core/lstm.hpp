#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace hydrocast {

// One layer of gate weights. Row convention: gate preactivation for a batch
// X (B x D), H (B x H) is X * W^T + H * U^T + b^T.
struct LstmCellParams {
    Eigen::MatrixXd W_i, W_f, W_o, W_c; // hidden_dim x input_dim
    Eigen::MatrixXd U_i, U_f, U_o, U_c; // hidden_dim x hidden_dim
    Eigen::VectorXd b_i, b_f, b_o, b_c; // hidden_dim
};

// Full parameter set: one or more stacked cells plus a scalar linear head.
struct LstmParams {
    int input_dim = 0;
    int hidden_dim = 0;
    std::vector<LstmCellParams> layers;
    Eigen::RowVectorXd W_out; // 1 x hidden_dim
    double b_out = 0.0;

    int num_layers() const { return static_cast<int>(layers.size()); }
};

// Glorot-uniform weights, forget-gate bias 1, other biases 0, head zeroed
// except for a small seeded output weight. Deterministic in `seed`.
LstmParams init_params(int input_dim, int hidden_dim, int num_layers, std::uint64_t seed);

// Gradient accumulator, shape-congruent with its LstmParams.
using GradientSet = LstmParams;

GradientSet zeros_like(const LstmParams& params);

// Per-layer recurrent state; rows are batch entries.
struct LstmState {
    Eigen::MatrixXd h; // batch x hidden_dim
    Eigen::MatrixXd c; // batch x hidden_dim

    static LstmState zeros(int batch, int hidden_dim);
};

struct GateActivations {
    Eigen::MatrixXd i, f, o, g; // batch x hidden_dim
};

// Single-cell step: i/f/o sigmoid gates, tanh modulation,
// c' = f.c + i.g, h' = o.tanh(c').
LstmState cell_forward(const LstmCellParams& cell, const Eigen::MatrixXd& x,
                       const LstmState& state, GateActivations* gates_out = nullptr);

// Equal-length window batch ready for the network: inputs[t] is the
// (batch x input_dim) slice at timestep t.
struct TrainingBatch {
    std::vector<Eigen::MatrixXd> inputs;
    Eigen::VectorXd targets;

    int batch_size() const { return static_cast<int>(targets.size()); }
    int steps() const { return static_cast<int>(inputs.size()); }
};

// Runs the stack over the whole sequence from zero state and applies the
// linear head to the final top-layer hidden state. One value per batch row.
Eigen::VectorXd sequence_forward(const LstmParams& params,
                                 const std::vector<Eigen::MatrixXd>& inputs);

// Convenience for a single sample.
double sequence_forward_one(const LstmParams& params,
                            const std::vector<Eigen::VectorXd>& inputs);

double loss_mse(double pred, double target);
double loss_mse_batch(const Eigen::VectorXd& pred, const Eigen::VectorXd& targets);

// Exact analytic gradient of the batch-mean squared error with respect to
// every parameter, by backpropagation through time.
double bptt(const LstmParams& params, const TrainingBatch& batch, GradientSet& grads);

// Max over parameters of |analytic - numeric| / max(1e-12, |analytic| + |numeric|),
// numeric side by central differences. O(#params x sequence cost).
double grad_check(const LstmParams& params, const TrainingBatch& batch, double step);

struct TrainingConfig {
    int epochs = 300;
    double learning_rate = 1e-3;
    int window = 12;
    std::uint64_t seed = 0;
    double clip_norm = 1.0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    int hidden_dim = 100;
    int num_layers = 1;
};

struct TrainResult {
    LstmParams params;
    std::vector<double> loss_curve; // one entry per epoch
};

// Full-batch adaptive-moment training with global-norm gradient clipping.
// Deterministic in (config, batch). Non-finite loss aborts with the epoch.
TrainResult train(const TrainingConfig& config, int input_dim, const TrainingBatch& batch);

// Recursive multi-step forecast in scaled space. `history` holds the last L
// scaled values; `aux` holds any extra input channels for positions
// 0..L+horizon-1 (aux[t] has input_dim - 1 entries). Each prediction is
// clamped to [0, 1] before being fed back.
std::vector<double> predict_horizon(const LstmParams& params, const std::vector<double>& history,
                                    const std::vector<std::vector<double>>& aux, int horizon);

// --- checkpoint persistence ----------------------------------------------
// Line-oriented text: `hydrocast-lstm v1`, then `input_dim hidden_dim layers`,
// then one named section per array with 17-significant-digit rows.

class CheckpointVersionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};
class CheckpointShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};
class CheckpointValueError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

void save_checkpoint(const LstmParams& params, const std::string& path);
LstmParams load_checkpoint(const std::string& path);

} // namespace hydrocast
