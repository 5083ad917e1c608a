#pragma once

#include <vector>

#include "rawmamba/tape.hpp"

namespace rawmamba::ops {

// ---- elementwise -----------------------------------------------------------
int add(Tape& t, int a, int b);
int sub(Tape& t, int a, int b);
int mul(Tape& t, int a, int b);
int div(Tape& t, int a, int b);
int add_scalar(Tape& t, int a, double c);
int mul_scalar(Tape& t, int a, double c);
int sigmoid(Tape& t, int a);
int silu(Tape& t, int a);
int relu(Tape& t, int a);
int softplus(Tape& t, int a);
int exp(Tape& t, int a);
int neg(Tape& t, int a);

/// y = s * x where s is a 1-element tensor node (learnable scalar).
int scalar_gain(Tape& t, int x, int s);
/// y[b,c,...] = gate[b,c] * x[b,c,...]
int channel_gate(Tape& t, int x, int gate);
/// y[b,c,...] = w[c] * x[b,c,...]
int channel_weight(Tape& t, int x, int w);

// ---- reductions ------------------------------------------------------------
int sum_all(Tape& t, int a);
int mean_all(Tape& t, int a);
/// (B,C,...) -> (B,C): mean over all trailing axes.
int global_avg_pool(Tape& t, int a);

// ---- shape -----------------------------------------------------------------
int reshape(Tape& t, int a, Shape shape);
int permute(Tape& t, int a, std::vector<int> axes);
int slice(Tape& t, int a, int axis, int64_t start, int64_t len);
int concat(Tape& t, const std::vector<int>& parts, int axis);
/// out[..., k] = x[..., idx[k]]; idx entries may repeat.
int gather_last(Tape& t, int a, std::vector<int64_t> idx);
/// x (B,P,W) scattered to (B,P,R): out[b,p,idx[p*W+w]] += x[b,p,w]; idx -1 drops.
int scatter_cols(Tape& t, int a, std::vector<int64_t> idx, int64_t r_size);
/// Reverses the last axis.
int reverse_last(Tape& t, int a);

// ---- linear algebra --------------------------------------------------------
int matmul(Tape& t, int a, int b);
/// (B,M,K) x (B,K,N) -> (B,M,N)
int bmm(Tape& t, int a, int b);
/// x (B,Cin,rest...), w (Cout,Cin), bias (Cout) or -1 -> (B,Cout,rest...)
int linear_channels(Tape& t, int x, int w, int bias);

// ---- convolution -----------------------------------------------------------
/// x (B,Cin,H,W), w (Cout,Cin,kh,kw) odd extents, bias (Cout) or -1.
/// Padding (k-1)/2, so out = ceil(in/stride).
int conv2d(Tape& t, int x, int w, int bias, int stride);
/// x (B,Cin,T,H,W), w (Cout,Cin,kt,kh,kw) odd extents, stride 1, same padding.
int conv3d(Tape& t, int x, int w, int bias);
/// x (B,C,T,H,W), k (C,kt,kh,kw) odd extents; no cross-channel mixing.
int depthwise_conv3d(Tape& t, int x, int k, bool same_padding = true);
/// x (B,D,L), w (D,k), bias (D) or -1; zero left padding (causal).
int causal_conv1d(Tape& t, int x, int w, int bias);

// ---- normalization / softmax ----------------------------------------------
int softmax(Tape& t, int a, int axis);
/// Normalizes along `axis`; gain/bias have that axis' extent.
int layer_norm(Tape& t, int x, int axis, int gain, int bias, double eps = 1e-5);
/// x (..., P) scaled so each row has unit L2 norm: x / sqrt(sum x^2 + eps).
int l2_normalize_last(Tape& t, int x, double eps = 1e-12);

// ---- resize -----------------------------------------------------------------
/// Bilinear, half-pixel centers (align-corners off), border clamped.
int resize_bilinear(Tape& t, int x, int64_t out_h, int64_t out_w);
/// Integer factor >= 1 wrapper over resize_bilinear.
int upsample_bilinear(Tape& t, int x, int factor);

// ---- state-space scan -------------------------------------------------------
/// Time-varying selective scan with exact per-step ZOH discretization.
/// u (B,D,L), delta (B,D,L) positive, a_diag (D,N), bvals (B,N,L),
/// cvals (B,N,L) -> y (B,D,L):
///   h_l = exp(delta_l a) (.) h_{l-1} + delta_l b_l phi(delta_l a) u_l
///   y_l = sum_n c_l[n] h_l[n],   phi(z) = (e^z - 1)/z.
int selective_scan(Tape& t, int u, int delta, int a_diag, int bvals, int cvals);

}  // namespace rawmamba::ops
