#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rawmamba/tensor.hpp"

namespace rawmamba {

class Tape;

/// Ordered registry of trainable tensors. Iteration order is creation order,
/// which keeps optimizer updates and checkpoints deterministic.
class ParamStore {
  public:
    int create(const std::string& name, Tensor init);
    int count() const { return static_cast<int>(values_.size()); }
    const std::string& name(int id) const { return names_.at(static_cast<size_t>(id)); }
    const Tensor& value(int id) const { return values_.at(static_cast<size_t>(id)); }
    void set(int id, Tensor v);
    /// -1 when absent.
    int find(const std::string& name) const;

  private:
    std::vector<std::string> names_;
    std::vector<Tensor> values_;
    std::unordered_map<std::string, int> index_;
};

/// Backward context handed to a node's vjp. grad_in(i) is an accumulation
/// buffer owned by the tape; duplicate parents share one buffer, so repeated
/// inputs accumulate naturally.
class BackCtx {
  public:
    BackCtx(Tape& tape, int node) : tape_(tape), node_(node) {}
    const Tensor& out() const;
    const Tensor& grad_out() const;
    const Tensor& in(int i) const;
    double* grad_in(int i);

  private:
    Tape& tape_;
    int node_;
};

using BackwardFn = std::function<void(BackCtx&)>;

/// Reverse-mode tape. Nodes are recorded in execution order (a valid
/// topological order); backward visits each reachable node exactly once.
/// Every pushed value is checked finite; a NaN/Inf fails fast naming the op.
class Tape {
  public:
    explicit Tape(ParamStore* params = nullptr) : params_(params) {}

    int constant(Tensor v, const char* op = "constant");
    /// Leaf backed by the param store; repeated calls return the same node.
    int param(int param_id);

    int push(const char* op, Tensor out, std::vector<int> parents, BackwardFn back);

    const Tensor& val(int id) const { return nodes_.at(static_cast<size_t>(id)).value; }
    const Shape& shape(int id) const { return val(id).shape(); }
    size_t num_nodes() const { return nodes_.size(); }

    /// Reverse sweep from a scalar output. Consumes the tape.
    void backward(int output_id);

    /// Gradient of the last backward() output w.r.t. node id (zeros if
    /// disconnected).
    Tensor grad(int id) const;
    /// Gradient for a trainable parameter (zeros if unused by the graph).
    Tensor param_grad(int param_id) const;

    ParamStore* params() const { return params_; }

  private:
    friend class BackCtx;
    struct Node {
        Tensor value;
        std::vector<int> parents;
        BackwardFn back;
        const char* op;
    };
    double* grad_buffer(int id);

    ParamStore* params_;
    std::vector<Node> nodes_;
    std::vector<Tensor> grads_;
    std::unordered_map<int, int> param_nodes_;
    bool consumed_ = false;
};

}  // namespace rawmamba
