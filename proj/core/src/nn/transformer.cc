// Copyright 2026 The pdg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "pdg/nn/transformer.h"

#include <cmath>
#include <numbers>

namespace pdg::nn {
namespace {

constexpr double kLayerNormEps = 1e-5;

double Unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

double Normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - Unit(rng);
  const double u2 = Unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void FillUniform(Matrix& m, double bound, std::mt19937_64& rng) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = bound * (2.0 * Unit(rng) - 1.0);
  }
}

// y = x W + b with b broadcast over rows.
Matrix Affine(const Matrix& x, const Matrix& w, const Matrix& b) {
  Matrix y = x * w;
  y.rowwise() += b.row(0);
  return y;
}

// Normalizes each row; returns gamma * xhat + beta.
Matrix LayerNorm(const Matrix& z, const Matrix& gamma, const Matrix& beta, Matrix* xhat_out,
                 Eigen::VectorXd* rstd_out) {
  const Eigen::Index d = z.cols();
  Matrix xhat(z.rows(), d);
  Eigen::VectorXd rstd(z.rows());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double mean = z.row(i).mean();
    const double var = (z.row(i).array() - mean).square().sum() / double(d);
    rstd(i) = 1.0 / std::sqrt(var + kLayerNormEps);
    xhat.row(i) = (z.row(i).array() - mean) * rstd(i);
  }
  Matrix y = xhat.array().rowwise() * gamma.row(0).array();
  y.rowwise() += beta.row(0);
  if (xhat_out) *xhat_out = std::move(xhat);
  if (rstd_out) *rstd_out = std::move(rstd);
  return y;
}

Matrix LayerNormBackward(const Matrix& dy, const Matrix& xhat, const Eigen::VectorXd& rstd,
                         const Matrix& gamma, Matrix& dgamma, Matrix& dbeta) {
  dgamma.row(0) += (dy.array() * xhat.array()).colwise().sum().matrix();
  dbeta.row(0) += dy.colwise().sum();
  const double d = double(dy.cols());
  const Matrix dxhat = dy.array().rowwise() * gamma.row(0).array();
  Matrix dz(dy.rows(), dy.cols());
  for (Eigen::Index i = 0; i < dy.rows(); ++i) {
    const double sum = dxhat.row(i).sum();
    const double dot = dxhat.row(i).dot(xhat.row(i));
    dz.row(i) = (rstd(i) / d) * (d * dxhat.row(i).array() - sum - xhat.row(i).array() * dot);
  }
  return dz;
}

Matrix DropoutMask(Eigen::Index rows, Eigen::Index cols, double p, std::mt19937_64& rng) {
  Matrix mask(rows, cols);
  const double keep = 1.0 / (1.0 - p);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) mask(i, j) = Unit(rng) < p ? 0.0 : keep;
  }
  return mask;
}

void CheckFinite(const Matrix& m, int layer, const char* where) {
  if (!m.allFinite()) {
    throw NumericalError(layer, std::string("non-finite activation in ") + where +
                                    (layer >= 0 ? " of layer " + std::to_string(layer) : ""));
  }
}

}  // namespace

const char* ToString(TokenMode mode) {
  return mode == TokenMode::kPerScalar ? "per_scalar" : "single";
}

TokenMode ParseTokenMode(const std::string& text) {
  if (text == "per_scalar") return TokenMode::kPerScalar;
  if (text == "single") return TokenMode::kSingle;
  throw std::invalid_argument("unknown token mode '" + text + "'");
}

void TransformerConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("TransformerConfig: ") + what);
  };
  require(input_dim >= 1, "input_dim must be >= 1");
  require(output_dim >= 1, "output_dim must be >= 1");
  require(d_model >= 1, "d_model must be >= 1");
  require(n_heads >= 1 && d_model % n_heads == 0, "d_model must be divisible by n_heads");
  require(n_layers >= 0, "n_layers must be >= 0");
  require(d_ff >= 0, "d_ff must be >= 0");
  require(dropout >= 0.0 && dropout < 1.0, "dropout must lie in [0, 1)");
}

Standardizer Standardizer::Fit(const Matrix& x) {
  Standardizer s;
  const double n = double(x.rows());
  s.mean = x.colwise().mean();
  s.std = RowVector::Ones(x.cols());
  if (x.rows() > 0) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double var = (x.col(j).array() - s.mean(j)).square().sum() / n;
      const double sd = std::sqrt(var);
      s.std(j) = sd > 1e-12 * std::max(1.0, std::abs(s.mean(j))) ? sd : 1.0;
    }
  }
  return s;
}

Matrix Standardizer::Apply(const Matrix& x) const {
  return (x.rowwise() - mean).array().rowwise() / std.array();
}

Matrix Standardizer::Invert(const Matrix& z) const {
  Matrix x = z.array().rowwise() * std.array();
  x.rowwise() += mean;
  return x;
}

int Transformer::Add(const std::string& name, int rows, int cols) {
  params_.push_back(Parameter{name, Matrix::Zero(rows, cols), Matrix::Zero(rows, cols)});
  return int(params_.size()) - 1;
}

Transformer::Transformer(const TransformerConfig& config, std::uint64_t seed) : config_(config) {
  config_.Validate();
  const int d = config_.d_model;
  const int ff = config_.ff_width();
  const int in = config_.tokens == TokenMode::kPerScalar ? 1 : config_.input_dim;

  enc_w_ = Add("encoder.weight", in, d);
  enc_b_ = Add("encoder.bias", 1, d);
  pos_ = Add("positional", config_.seq_len(), d);
  for (int l = 0; l < config_.n_layers; ++l) {
    const std::string p = "layers." + std::to_string(l) + ".";
    LayerIds id;
    id.wq = Add(p + "attn.wq", d, d);
    id.bq = Add(p + "attn.bq", 1, d);
    id.wk = Add(p + "attn.wk", d, d);
    id.bk = Add(p + "attn.bk", 1, d);
    id.wv = Add(p + "attn.wv", d, d);
    id.bv = Add(p + "attn.bv", 1, d);
    id.wo = Add(p + "attn.wo", d, d);
    id.bo = Add(p + "attn.bo", 1, d);
    id.g1 = Add(p + "norm1.gamma", 1, d);
    id.b1n = Add(p + "norm1.beta", 1, d);
    id.w1 = Add(p + "ff.w1", d, ff);
    id.b1 = Add(p + "ff.b1", 1, ff);
    id.w2 = Add(p + "ff.w2", ff, d);
    id.b2 = Add(p + "ff.b2", 1, d);
    id.g2 = Add(p + "norm2.gamma", 1, d);
    id.b2n = Add(p + "norm2.beta", 1, d);
    layers_.push_back(id);
  }
  dec_w_ = Add("decoder.weight", d, config_.output_dim);
  dec_b_ = Add("decoder.bias", 1, config_.output_dim);

  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), 0x6e6e696eu};
  std::mt19937_64 rng(seq);
  for (Parameter& p : params_) {
    const bool norm_gain = p.name.find(".gamma") != std::string::npos;
    const bool norm_bias = p.name.find(".beta") != std::string::npos;
    if (norm_gain) {
      p.value.setOnes();
    } else if (norm_bias) {
      p.value.setZero();
    } else if (p.name == "positional") {
      for (Eigen::Index j = 0; j < p.value.cols(); ++j) {
        for (Eigen::Index i = 0; i < p.value.rows(); ++i) p.value(i, j) = 0.02 * Normal(rng);
      }
    }
  }
  // Linear layers: U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weight and bias.
  auto init_linear = [&](int w, int b) {
    const double bound = 1.0 / std::sqrt(double(params_[w].value.rows()));
    FillUniform(params_[w].value, bound, rng);
    FillUniform(params_[b].value, bound, rng);
  };
  init_linear(enc_w_, enc_b_);
  for (const LayerIds& id : layers_) {
    init_linear(id.wq, id.bq);
    init_linear(id.wk, id.bk);
    init_linear(id.wv, id.bv);
    init_linear(id.wo, id.bo);
    init_linear(id.w1, id.b1);
    init_linear(id.w2, id.b2);
  }
  init_linear(dec_w_, dec_b_);
}

Parameter& Transformer::parameter(const std::string& name) {
  for (Parameter& p : params_) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("no parameter named " + name);
}

const Parameter& Transformer::parameter(const std::string& name) const {
  return const_cast<Transformer*>(this)->parameter(name);
}

std::size_t Transformer::ParameterCount() const {
  std::size_t n = 0;
  for (const Parameter& p : params_) n += std::size_t(p.value.size());
  return n;
}

void Transformer::ZeroGrad() {
  for (Parameter& p : params_) p.grad.setZero();
}

Matrix Transformer::Forward(const Matrix& x, Matrix* embeddings) const {
  return Run(x, nullptr, nullptr, embeddings);
}

Matrix Transformer::ForwardTrain(const Matrix& x, std::mt19937_64& rng) {
  return Run(x, &rng, &cache_, nullptr);
}

Matrix Transformer::Run(const Matrix& x, std::mt19937_64* rng, Cache* cache,
                        Matrix* embeddings) const {
  if (x.cols() != config_.input_dim) {
    throw std::invalid_argument("Transformer: expected " + std::to_string(config_.input_dim) +
                                " input columns, got " + std::to_string(x.cols()));
  }
  const int batch = int(x.rows());
  const int len = config_.seq_len();
  const int d = config_.d_model;
  const int heads = config_.n_heads;
  const int dk = config_.d_k();
  const double p_drop = rng ? config_.dropout : 0.0;
  auto value = [&](int id) -> const Matrix& { return params_[id].value; };

  // Token embeddings, row b * len + i.
  Matrix h(batch * len, d);
  if (config_.tokens == TokenMode::kPerScalar) {
    for (int b = 0; b < batch; ++b) {
      for (int i = 0; i < len; ++i) {
        h.row(b * len + i) = x(b, i) * value(enc_w_).row(0) + value(enc_b_).row(0) +
                             value(pos_).row(i);
      }
    }
  } else {
    h = Affine(x, value(enc_w_), value(enc_b_));
    h.rowwise() += value(pos_).row(0);
  }
  CheckFinite(h, -1, "input embedding");

  if (cache) {
    cache->x = x;
    cache->batch = batch;
    cache->layers.assign(layers_.size(), LayerCache{});
  }

  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const LayerIds& id = layers_[l];
    LayerCache* lc = cache ? &cache->layers[l] : nullptr;

    const Matrix q = Affine(h, value(id.wq), value(id.bq));
    const Matrix k = Affine(h, value(id.wk), value(id.bk));
    const Matrix v = Affine(h, value(id.wv), value(id.bv));
    Matrix ctx(batch * len, d);
    if (lc) lc->weights.resize(std::size_t(batch) * heads);
    for (int b = 0; b < batch; ++b) {
      for (int hd = 0; hd < heads; ++hd) {
        Matrix w;
        ctx.block(b * len, hd * dk, len, dk) =
            Attention(q.block(b * len, hd * dk, len, dk), k.block(b * len, hd * dk, len, dk),
                      v.block(b * len, hd * dk, len, dk), lc ? &w : nullptr);
        if (lc) lc->weights[std::size_t(b) * heads + hd] = std::move(w);
      }
    }
    Matrix attn = Affine(ctx, value(id.wo), value(id.bo));
    Matrix mask1;
    if (p_drop > 0.0) {
      mask1 = DropoutMask(attn.rows(), attn.cols(), p_drop, *rng);
      attn.array() *= mask1.array();
    }
    Matrix xhat1;
    Eigen::VectorXd rstd1;
    Matrix h1 = LayerNorm(h + attn, value(id.g1), value(id.b1n), lc ? &xhat1 : nullptr,
                          lc ? &rstd1 : nullptr);

    Matrix u = Affine(h1, value(id.w1), value(id.b1));
    Matrix f = Affine(u.cwiseMax(0.0), value(id.w2), value(id.b2));
    Matrix mask2;
    if (p_drop > 0.0) {
      mask2 = DropoutMask(f.rows(), f.cols(), p_drop, *rng);
      f.array() *= mask2.array();
    }
    Matrix xhat2;
    Eigen::VectorXd rstd2;
    Matrix h2 = LayerNorm(h1 + f, value(id.g2), value(id.b2n), lc ? &xhat2 : nullptr,
                          lc ? &rstd2 : nullptr);
    CheckFinite(h2, int(l), "encoder output");

    if (lc) {
      lc->h0 = std::move(h);
      lc->q = q;
      lc->k = k;
      lc->v = v;
      lc->ctx = std::move(ctx);
      lc->mask1 = std::move(mask1);
      lc->xhat1 = std::move(xhat1);
      lc->rstd1 = std::move(rstd1);
      lc->h1 = std::move(h1);
      lc->u = std::move(u);
      lc->mask2 = std::move(mask2);
      lc->xhat2 = std::move(xhat2);
      lc->rstd2 = std::move(rstd2);
    }
    h = std::move(h2);
  }

  Matrix pooled(batch, d);
  for (int b = 0; b < batch; ++b) pooled.row(b) = h.middleRows(b * len, len).colwise().mean();
  Matrix out = Affine(pooled, value(dec_w_), value(dec_b_));
  CheckFinite(out, -2, "decoder output");
  if (cache) cache->embeddings = pooled;
  if (embeddings) *embeddings = std::move(pooled);
  return out;
}

void Transformer::Backward(const Matrix& d_out) {
  Cache& c = cache_;
  const int batch = c.batch;
  if (d_out.rows() != batch || d_out.cols() != config_.output_dim) {
    throw std::invalid_argument("Transformer::Backward: gradient shape mismatch");
  }
  const int len = config_.seq_len();
  const int d = config_.d_model;
  const int heads = config_.n_heads;
  const int dk = config_.d_k();
  auto value = [&](int id) -> const Matrix& { return params_[id].value; };
  auto grad = [&](int id) -> Matrix& { return params_[id].grad; };

  grad(dec_w_) += c.embeddings.transpose() * d_out;
  grad(dec_b_).row(0) += d_out.colwise().sum();
  const Matrix d_pooled = d_out * value(dec_w_).transpose();
  Matrix dh(batch * len, d);
  for (int b = 0; b < batch; ++b) {
    for (int i = 0; i < len; ++i) dh.row(b * len + i) = d_pooled.row(b) / double(len);
  }

  for (int l = int(layers_.size()) - 1; l >= 0; --l) {
    const LayerIds& id = layers_[l];
    const LayerCache& lc = c.layers[l];

    // Second add & norm and the feedforward block.
    const Matrix dz2 = LayerNormBackward(dh, lc.xhat2, lc.rstd2, value(id.g2), grad(id.g2),
                                         grad(id.b2n));
    Matrix df = dz2;
    if (lc.mask2.size() > 0) df.array() *= lc.mask2.array();
    const Matrix r = lc.u.cwiseMax(0.0);
    grad(id.w2) += r.transpose() * df;
    grad(id.b2).row(0) += df.colwise().sum();
    Matrix du = df * value(id.w2).transpose();
    du.array() *= (lc.u.array() > 0.0).cast<double>();
    grad(id.w1) += lc.h1.transpose() * du;
    grad(id.b1).row(0) += du.colwise().sum();
    const Matrix dh1 = dz2 + du * value(id.w1).transpose();

    // First add & norm and the attention block.
    const Matrix dz1 = LayerNormBackward(dh1, lc.xhat1, lc.rstd1, value(id.g1), grad(id.g1),
                                         grad(id.b1n));
    Matrix da = dz1;
    if (lc.mask1.size() > 0) da.array() *= lc.mask1.array();
    grad(id.wo) += lc.ctx.transpose() * da;
    grad(id.bo).row(0) += da.colwise().sum();
    const Matrix dctx = da * value(id.wo).transpose();
    Matrix dq(batch * len, d), dkm(batch * len, d), dv(batch * len, d);
    for (int b = 0; b < batch; ++b) {
      for (int hd = 0; hd < heads; ++hd) {
        const AttentionGrad g = AttentionBackward(
            lc.q.block(b * len, hd * dk, len, dk), lc.k.block(b * len, hd * dk, len, dk),
            lc.v.block(b * len, hd * dk, len, dk), lc.weights[std::size_t(b) * heads + hd],
            dctx.block(b * len, hd * dk, len, dk));
        dq.block(b * len, hd * dk, len, dk) = g.dq;
        dkm.block(b * len, hd * dk, len, dk) = g.dk;
        dv.block(b * len, hd * dk, len, dk) = g.dv;
      }
    }
    grad(id.wq) += lc.h0.transpose() * dq;
    grad(id.bq).row(0) += dq.colwise().sum();
    grad(id.wk) += lc.h0.transpose() * dkm;
    grad(id.bk).row(0) += dkm.colwise().sum();
    grad(id.wv) += lc.h0.transpose() * dv;
    grad(id.bv).row(0) += dv.colwise().sum();
    dh = dz1 + dq * value(id.wq).transpose() + dkm * value(id.wk).transpose() +
         dv * value(id.wv).transpose();
  }

  if (config_.tokens == TokenMode::kPerScalar) {
    for (int b = 0; b < batch; ++b) {
      for (int i = 0; i < len; ++i) {
        const auto row = dh.row(b * len + i);
        grad(enc_w_).row(0) += c.x(b, i) * row;
        grad(enc_b_).row(0) += row;
        grad(pos_).row(i) += row;
      }
    }
  } else {
    grad(enc_w_) += c.x.transpose() * dh;
    grad(enc_b_).row(0) += dh.colwise().sum();
    grad(pos_).row(0) += dh.colwise().sum();
  }
}

}  // namespace pdg::nn
