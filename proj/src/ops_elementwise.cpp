#include <cmath>

#include "rawmamba/ops.hpp"

namespace rawmamba::ops {

namespace {

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b))
        throw ShapeError(std::string(op) + ": shape " + shape_str(a.shape()) + " vs " +
                         shape_str(b.shape()));
}

template <typename Fwd, typename Bwd>
int unary(Tape& t, int a, const char* name, Fwd fwd, Bwd bwd) {
    const Tensor& x = t.val(a);
    Tensor y = Tensor::uninit(x.shape());
    double* yp = y.mutable_data();
    for (int64_t i = 0; i < x.size(); ++i) yp[i] = fwd(x[i]);
    return t.push(name, std::move(y), {a}, [bwd](BackCtx& ctx) {
        const Tensor& x = ctx.in(0);
        const Tensor& y = ctx.out();
        const Tensor& gy = ctx.grad_out();
        double* gx = ctx.grad_in(0);
        for (int64_t i = 0; i < x.size(); ++i) gx[i] += gy[i] * bwd(x[i], y[i]);
    });
}

}  // namespace

int add(Tape& t, int a, int b) {
    const Tensor& xa = t.val(a);
    const Tensor& xb = t.val(b);
    require_same_shape("add", xa, xb);
    Tensor y = Tensor::uninit(xa.shape());
    double* yp = y.mutable_data();
    for (int64_t i = 0; i < xa.size(); ++i) yp[i] = xa[i] + xb[i];
    return t.push("add", std::move(y), {a, b}, [](BackCtx& ctx) {
        const Tensor& gy = ctx.grad_out();
        double* ga = ctx.grad_in(0);
        for (int64_t i = 0; i < gy.size(); ++i) ga[i] += gy[i];
        double* gb = ctx.grad_in(1);
        for (int64_t i = 0; i < gy.size(); ++i) gb[i] += gy[i];
    });
}

int sub(Tape& t, int a, int b) {
    const Tensor& xa = t.val(a);
    const Tensor& xb = t.val(b);
    require_same_shape("sub", xa, xb);
    Tensor y = Tensor::uninit(xa.shape());
    double* yp = y.mutable_data();
    for (int64_t i = 0; i < xa.size(); ++i) yp[i] = xa[i] - xb[i];
    return t.push("sub", std::move(y), {a, b}, [](BackCtx& ctx) {
        const Tensor& gy = ctx.grad_out();
        double* ga = ctx.grad_in(0);
        for (int64_t i = 0; i < gy.size(); ++i) ga[i] += gy[i];
        double* gb = ctx.grad_in(1);
        for (int64_t i = 0; i < gy.size(); ++i) gb[i] -= gy[i];
    });
}

int mul(Tape& t, int a, int b) {
    const Tensor& xa = t.val(a);
    const Tensor& xb = t.val(b);
    require_same_shape("mul", xa, xb);
    Tensor y = Tensor::uninit(xa.shape());
    double* yp = y.mutable_data();
    for (int64_t i = 0; i < xa.size(); ++i) yp[i] = xa[i] * xb[i];
    return t.push("mul", std::move(y), {a, b}, [](BackCtx& ctx) {
        const Tensor& xa = ctx.in(0);
        const Tensor& xb = ctx.in(1);
        const Tensor& gy = ctx.grad_out();
        double* ga = ctx.grad_in(0);
        for (int64_t i = 0; i < gy.size(); ++i) ga[i] += gy[i] * xb[i];
        double* gb = ctx.grad_in(1);
        for (int64_t i = 0; i < gy.size(); ++i) gb[i] += gy[i] * xa[i];
    });
}

int div(Tape& t, int a, int b) {
    const Tensor& xa = t.val(a);
    const Tensor& xb = t.val(b);
    require_same_shape("div", xa, xb);
    Tensor y = Tensor::uninit(xa.shape());
    double* yp = y.mutable_data();
    for (int64_t i = 0; i < xa.size(); ++i) yp[i] = xa[i] / xb[i];
    return t.push("div", std::move(y), {a, b}, [](BackCtx& ctx) {
        const Tensor& xa = ctx.in(0);
        const Tensor& xb = ctx.in(1);
        const Tensor& gy = ctx.grad_out();
        double* ga = ctx.grad_in(0);
        for (int64_t i = 0; i < gy.size(); ++i) ga[i] += gy[i] / xb[i];
        double* gb = ctx.grad_in(1);
        for (int64_t i = 0; i < gy.size(); ++i) gb[i] -= gy[i] * xa[i] / (xb[i] * xb[i]);
    });
}

int add_scalar(Tape& t, int a, double c) {
    return unary(
        t, a, "add_scalar", [c](double x) { return x + c; },
        [](double, double) { return 1.0; });
}

int mul_scalar(Tape& t, int a, double c) {
    return unary(
        t, a, "mul_scalar", [c](double x) { return x * c; },
        [c](double, double) { return c; });
}

int neg(Tape& t, int a) {
    return mul_scalar(t, a, -1.0);
}

int sigmoid(Tape& t, int a) {
    return unary(
        t, a, "sigmoid", [](double x) { return 1.0 / (1.0 + std::exp(-x)); },
        [](double, double y) { return y * (1.0 - y); });
}

int silu(Tape& t, int a) {
    return unary(
        t, a, "silu",
        [](double x) { return x / (1.0 + std::exp(-x)); },
        [](double x, double) {
            double s = 1.0 / (1.0 + std::exp(-x));
            return s * (1.0 + x * (1.0 - s));
        });
}

int relu(Tape& t, int a) {
    return unary(
        t, a, "relu", [](double x) { return x > 0.0 ? x : 0.0; },
        [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

int softplus(Tape& t, int a) {
    return unary(
        t, a, "softplus",
        [](double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); },
        [](double x, double) { return 1.0 / (1.0 + std::exp(-x)); });
}

int exp(Tape& t, int a) {
    return unary(
        t, a, "exp", [](double x) { return std::exp(x); },
        [](double, double y) { return y; });
}

int scalar_gain(Tape& t, int x, int s) {
    const Tensor& xv = t.val(x);
    const Tensor& sv = t.val(s);
    if (sv.size() != 1) throw ShapeError("scalar_gain: gain must have 1 element");
    double g = sv[0];
    Tensor y = Tensor::uninit(xv.shape());
    double* yp = y.mutable_data();
    for (int64_t i = 0; i < xv.size(); ++i) yp[i] = g * xv[i];
    return t.push("scalar_gain", std::move(y), {x, s}, [](BackCtx& ctx) {
        const Tensor& xv = ctx.in(0);
        double g = ctx.in(1)[0];
        const Tensor& gy = ctx.grad_out();
        double* gx = ctx.grad_in(0);
        double acc = 0.0;
        for (int64_t i = 0; i < xv.size(); ++i) {
            gx[i] += g * gy[i];
            acc += gy[i] * xv[i];
        }
        ctx.grad_in(1)[0] += acc;
    });
}

int channel_gate(Tape& t, int x, int gate) {
    const Tensor& xv = t.val(x);
    const Tensor& gv = t.val(gate);
    if (xv.rank() < 2 || gv.rank() != 2 || gv.dim(0) != xv.dim(0) || gv.dim(1) != xv.dim(1))
        throw ShapeError("channel_gate: x " + shape_str(xv.shape()) + " gate " +
                         shape_str(gv.shape()));
    int64_t bc = xv.dim(0) * xv.dim(1);
    int64_t inner = xv.size() / bc;
    Tensor y = Tensor::uninit(xv.shape());
    double* yp = y.mutable_data();
    for (int64_t j = 0; j < bc; ++j) {
        double g = gv[j];
        for (int64_t i = 0; i < inner; ++i) yp[j * inner + i] = g * xv[j * inner + i];
    }
    return t.push("channel_gate", std::move(y), {x, gate}, [bc, inner](BackCtx& ctx) {
        const Tensor& xv = ctx.in(0);
        const Tensor& gv = ctx.in(1);
        const Tensor& gy = ctx.grad_out();
        double* gx = ctx.grad_in(0);
        double* gg = ctx.grad_in(1);
        for (int64_t j = 0; j < bc; ++j) {
            double g = gv[j];
            double acc = 0.0;
            for (int64_t i = 0; i < inner; ++i) {
                int64_t k = j * inner + i;
                gx[k] += g * gy[k];
                acc += gy[k] * xv[k];
            }
            gg[j] += acc;
        }
    });
}

int channel_weight(Tape& t, int x, int w) {
    const Tensor& xv = t.val(x);
    const Tensor& wv = t.val(w);
    if (xv.rank() < 2 || wv.rank() != 1 || wv.dim(0) != xv.dim(1))
        throw ShapeError("channel_weight: x " + shape_str(xv.shape()) + " w " +
                         shape_str(wv.shape()));
    int64_t b = xv.dim(0), c = xv.dim(1);
    int64_t inner = xv.size() / (b * c);
    Tensor y = Tensor::uninit(xv.shape());
    double* yp = y.mutable_data();
    for (int64_t bi = 0; bi < b; ++bi)
        for (int64_t ci = 0; ci < c; ++ci) {
            double g = wv[ci];
            int64_t base = (bi * c + ci) * inner;
            for (int64_t i = 0; i < inner; ++i) yp[base + i] = g * xv[base + i];
        }
    return t.push("channel_weight", std::move(y), {x, w}, [b, c, inner](BackCtx& ctx) {
        const Tensor& xv = ctx.in(0);
        const Tensor& wv = ctx.in(1);
        const Tensor& gy = ctx.grad_out();
        double* gx = ctx.grad_in(0);
        double* gw = ctx.grad_in(1);
        for (int64_t bi = 0; bi < b; ++bi)
            for (int64_t ci = 0; ci < c; ++ci) {
                double g = wv[ci];
                double acc = 0.0;
                int64_t base = (bi * c + ci) * inner;
                for (int64_t i = 0; i < inner; ++i) {
                    gx[base + i] += g * gy[base + i];
                    acc += gy[base + i] * xv[base + i];
                }
                gw[ci] += acc;
            }
    });
}

int sum_all(Tape& t, int a) {
    const Tensor& x = t.val(a);
    double s = 0.0;
    for (int64_t i = 0; i < x.size(); ++i) s += x[i];
    return t.push("sum_all", Tensor::scalar(s), {a}, [](BackCtx& ctx) {
        double g = ctx.grad_out()[0];
        double* gx = ctx.grad_in(0);
        for (int64_t i = 0; i < ctx.in(0).size(); ++i) gx[i] += g;
    });
}

int mean_all(Tape& t, int a) {
    const Tensor& x = t.val(a);
    double s = 0.0;
    for (int64_t i = 0; i < x.size(); ++i) s += x[i];
    double inv = 1.0 / static_cast<double>(x.size());
    return t.push("mean_all", Tensor::scalar(s * inv), {a}, [inv](BackCtx& ctx) {
        double g = ctx.grad_out()[0] * inv;
        double* gx = ctx.grad_in(0);
        for (int64_t i = 0; i < ctx.in(0).size(); ++i) gx[i] += g;
    });
}

int global_avg_pool(Tape& t, int a) {
    const Tensor& x = t.val(a);
    if (x.rank() < 3) throw ShapeError("global_avg_pool expects rank >= 3, got " +
                                       shape_str(x.shape()));
    int64_t b = x.dim(0), c = x.dim(1);
    int64_t inner = x.size() / (b * c);
    double inv = 1.0 / static_cast<double>(inner);
    Tensor y = Tensor::uninit({b, c});
    double* yp = y.mutable_data();
    for (int64_t j = 0; j < b * c; ++j) {
        double s = 0.0;
        for (int64_t i = 0; i < inner; ++i) s += x[j * inner + i];
        yp[j] = s * inv;
    }
    return t.push("global_avg_pool", std::move(y), {a}, [inner, inv](BackCtx& ctx) {
        const Tensor& gy = ctx.grad_out();
        double* gx = ctx.grad_in(0);
        for (int64_t j = 0; j < gy.size(); ++j) {
            double g = gy[j] * inv;
            for (int64_t i = 0; i < inner; ++i) gx[j * inner + i] += g;
        }
    });
}

}  // namespace rawmamba::ops
