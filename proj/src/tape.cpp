#include "rawmamba/tape.hpp"

namespace rawmamba {

int ParamStore::create(const std::string& name, Tensor init) {
    if (index_.count(name)) throw ConfigError("duplicate parameter name: " + name);
    if (!init.all_finite()) throw EvalError("non-finite init for parameter " + name);
    int id = static_cast<int>(values_.size());
    names_.push_back(name);
    values_.push_back(std::move(init));
    index_[name] = id;
    return id;
}

void ParamStore::set(int id, Tensor v) {
    Tensor& cur = values_.at(static_cast<size_t>(id));
    if (cur.shape() != v.shape())
        throw ShapeError("ParamStore::set " + names_[static_cast<size_t>(id)] + ": shape " +
                         shape_str(cur.shape()) + " vs " + shape_str(v.shape()));
    cur = std::move(v);
}

int ParamStore::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

const Tensor& BackCtx::out() const {
    return tape_.nodes_[static_cast<size_t>(node_)].value;
}

const Tensor& BackCtx::grad_out() const {
    return tape_.grads_[static_cast<size_t>(node_)];
}

const Tensor& BackCtx::in(int i) const {
    int pid = tape_.nodes_[static_cast<size_t>(node_)].parents.at(static_cast<size_t>(i));
    return tape_.nodes_[static_cast<size_t>(pid)].value;
}

double* BackCtx::grad_in(int i) {
    int pid = tape_.nodes_[static_cast<size_t>(node_)].parents.at(static_cast<size_t>(i));
    return tape_.grad_buffer(pid);
}

int Tape::constant(Tensor v, const char* op) {
    if (!v.all_finite()) throw EvalError(std::string("non-finite value in ") + op);
    nodes_.push_back(Node{std::move(v), {}, nullptr, op});
    return static_cast<int>(nodes_.size()) - 1;
}

int Tape::param(int param_id) {
    if (!params_) throw ContractError("tape has no parameter store");
    auto it = param_nodes_.find(param_id);
    if (it != param_nodes_.end()) return it->second;
    int node = constant(params_->value(param_id), "param");
    param_nodes_[param_id] = node;
    return node;
}

int Tape::push(const char* op, Tensor out, std::vector<int> parents, BackwardFn back) {
    if (!out.all_finite()) throw EvalError(std::string("non-finite output of ") + op);
    for (int p : parents)
        if (p < 0 || p >= static_cast<int>(nodes_.size()))
            throw ContractError(std::string("bad parent id in ") + op);
    nodes_.push_back(Node{std::move(out), std::move(parents), std::move(back), op});
    return static_cast<int>(nodes_.size()) - 1;
}

double* Tape::grad_buffer(int id) {
    Tensor& g = grads_[static_cast<size_t>(id)];
    if (!g.defined()) g = Tensor::zeros(nodes_[static_cast<size_t>(id)].value.shape());
    return g.mutable_data();
}

void Tape::backward(int output_id) {
    if (consumed_) throw ContractError("tape already consumed by backward()");
    consumed_ = true;
    const Tensor& out = val(output_id);
    if (out.size() != 1)
        throw ContractError("backward() requires a scalar output, got shape " +
                            shape_str(out.shape()));
    grads_.assign(nodes_.size(), Tensor());
    grads_[static_cast<size_t>(output_id)] = Tensor::scalar(1.0);
    for (int id = output_id; id >= 0; --id) {
        Node& node = nodes_[static_cast<size_t>(id)];
        if (!grads_[static_cast<size_t>(id)].defined() || !node.back) continue;
        BackCtx ctx(*this, id);
        node.back(ctx);
    }
}

Tensor Tape::grad(int id) const {
    const Tensor& g = grads_.at(static_cast<size_t>(id));
    if (g.defined()) return g;
    return Tensor::zeros(val(id).shape());
}

Tensor Tape::param_grad(int param_id) const {
    auto it = param_nodes_.find(param_id);
    if (it == param_nodes_.end()) {
        if (!params_) throw ContractError("tape has no parameter store");
        return Tensor::zeros(params_->value(param_id).shape());
    }
    return grad(it->second);
}

}  // namespace rawmamba
