// Copyright 2026 The Typology Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "typology/net/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>
#include <unordered_map>

#include "typology/error.hpp"

namespace typology::net {
namespace {

template <typename S>
void fill_uniform(Mat<S>& m, double bound, std::mt19937_64& rng) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      m(i, j) = static_cast<S>((2.0 * u - 1.0) * bound);
    }
}

template <typename S>
Mat<S> sigmoid(const Mat<S>& x) {
  return (S(1) / (S(1) + (-x.array()).exp())).matrix();
}

template <typename S>
using Block = Eigen::Block<Mat<S>, Eigen::Dynamic, Eigen::Dynamic, true>;

template <typename S>
void run_direction(const Mat<S>& W, const Mat<S>& U, const Mat<S>& b, const Mat<S>& emb,
                   const std::vector<const std::vector<int>*>& seqs,
                   const std::unordered_map<int, int>& slot, DirectionCache<S>& dc) {
  const int B = static_cast<int>(seqs.size());
  const Eigen::Index D = W.cols();
  const Eigen::Index H = U.cols();
  int T = 0;
  for (const auto* s : seqs) T = std::max(T, static_cast<int>(s->size()));
  dc.steps = T;
  dc.x.setZero(D, static_cast<Eigen::Index>(T) * B);
  dc.mask.setZero(1, static_cast<Eigen::Index>(T) * B);
  dc.local.assign(static_cast<std::size_t>(T) * B, -1);
  dc.c.setZero(H, static_cast<Eigen::Index>(T + 1) * B);
  dc.h.setZero(H, static_cast<Eigen::Index>(T + 1) * B);
  if (T == 0) {
    dc.gates.resize(4 * H, 0);
    return;
  }
  for (int bi = 0; bi < B; ++bi) {
    const std::vector<int>& s = *seqs[bi];
    const int start = T - static_cast<int>(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      const int col = (start + static_cast<int>(k)) * B + bi;
      const int local = slot.at(s[k]);
      dc.local[col] = local;
      dc.x.col(col) = emb.col(local);
      dc.mask(0, col) = S(1);
    }
  }
  dc.gates.noalias() = W * dc.x;
  dc.gates.colwise() += b.col(0);
  for (int t = 0; t < T; ++t) {
    auto G = dc.gates.middleCols(static_cast<Eigen::Index>(t) * B, B);
    G.noalias() += U * dc.h.middleCols(static_cast<Eigen::Index>(t) * B, B);
    G.topRows(2 * H) = sigmoid<S>(G.topRows(2 * H));
    G.middleRows(2 * H, H) = G.middleRows(2 * H, H).array().tanh().matrix();
    G.bottomRows(H) = sigmoid<S>(G.bottomRows(H));
    auto c_prev = dc.c.middleCols(static_cast<Eigen::Index>(t) * B, B);
    auto c_next = dc.c.middleCols(static_cast<Eigen::Index>(t + 1) * B, B);
    c_next = G.middleRows(H, H).cwiseProduct(c_prev) +
             G.topRows(H).cwiseProduct(G.middleRows(2 * H, H));
    c_next.array().rowwise() *= dc.mask.row(0).segment(static_cast<Eigen::Index>(t) * B, B).array();
    dc.h.middleCols(static_cast<Eigen::Index>(t + 1) * B, B) =
        G.bottomRows(H).cwiseProduct(c_next.array().tanh().matrix());
  }
}

template <typename S>
void backprop_direction(const Mat<S>& W, const Mat<S>& U, const DirectionCache<S>& dc, Mat<S> dh,
                        Mat<S>& dW, Mat<S>& dU, Mat<S>& db, Mat<S>& demb,
                        const BackwardFault& fault) {
  const int T = dc.steps;
  if (T == 0) return;
  const Eigen::Index H = U.cols();
  const Eigen::Index B = dh.cols();
  Mat<S> dcell = Mat<S>::Zero(H, B);
  Mat<S> dpre(4 * H, T * B);
  for (int t = T - 1; t >= 0; --t) {
    const Eigen::Index off = static_cast<Eigen::Index>(t) * B;
    const auto G = dc.gates.middleCols(off, B);
    const auto i = G.topRows(H).array();
    const auto f = G.middleRows(H, H).array();
    const auto g = G.middleRows(2 * H, H).array();
    const auto o = G.bottomRows(H).array();
    const auto mask = dc.mask.row(0).segment(off, B).array();
    const auto c_prev = dc.c.middleCols(off, B).array();
    const Mat<S> tc = dc.c.middleCols(off + B, B).array().tanh().matrix();

    dh.array().rowwise() *= mask;
    dcell.array() += dh.array() * o * (S(1) - tc.array().square());
    dcell.array().rowwise() *= mask;

    auto P = dpre.middleCols(off, B);
    P.topRows(H) = (dcell.array() * g * i * (S(1) - i)).matrix();
    P.middleRows(H, H) = (dcell.array() * c_prev * f * (S(1) - f)).matrix();
    P.middleRows(2 * H, H) = (dcell.array() * i * (S(1) - g.square())).matrix();
    P.bottomRows(H) = (dh.array() * tc.array() * o * (S(1) - o)).matrix();

    if (!fault.drop_forget_gate_in_cell_gradient) dcell.array() *= f;
    dh.noalias() = U.transpose() * P;
  }
  dU.noalias() += dpre * dc.h.leftCols(static_cast<Eigen::Index>(T) * B).transpose();
  dW.noalias() += dpre * dc.x.transpose();
  db += dpre.rowwise().sum();
  const Mat<S> dx = W.transpose() * dpre;
  for (Eigen::Index col = 0; col < dx.cols(); ++col)
    if (dc.local[col] >= 0) demb.col(dc.local[col]) += dx.col(col);
}

template <typename S>
S head_forward(const Mat<S>& W1, const Mat<S>& b1, const Mat<S>& W2, const Mat<S>& b2,
               const Mat<S>& W3, const Mat<S>& b3, const Mat<S>& z, const std::vector<int>& labels,
               HeadCache<S>& hc) {
  hc.a1.noalias() = W1 * z;
  hc.a1.colwise() += b1.col(0);
  hc.a1 = hc.a1.array().tanh().matrix();
  hc.a2.noalias() = W2 * hc.a1;
  hc.a2.colwise() += b2.col(0);
  hc.a2 = hc.a2.array().tanh().matrix();
  Mat<S> logits = W3 * hc.a2;
  logits.colwise() += b3.col(0);
  hc.probs.resize(logits.rows(), logits.cols());
  S loss = 0;
  for (Eigen::Index b = 0; b < logits.cols(); ++b) {
    const S mx = logits.col(b).maxCoeff();
    const auto shifted = (logits.col(b).array() - mx).eval();
    const S sum = shifted.exp().sum();
    hc.probs.col(b) = (shifted.exp() / sum).matrix();
    loss += std::log(sum) - shifted(labels[b]);
  }
  return loss;
}

template <typename S>
void head_backward(const Mat<S>& W1, const Mat<S>& W2, const Mat<S>& W3, const Mat<S>& z,
                   const std::vector<int>& labels, S scale, const HeadCache<S>& hc, Mat<S>& dW1,
                   Mat<S>& db1, Mat<S>& dW2, Mat<S>& db2, Mat<S>& dW3, Mat<S>& db3, Mat<S>& dz) {
  Mat<S> dlogits = hc.probs;
  for (Eigen::Index b = 0; b < dlogits.cols(); ++b) dlogits(labels[b], b) -= S(1);
  dlogits *= scale;
  dW3.noalias() += dlogits * hc.a2.transpose();
  db3 += dlogits.rowwise().sum();
  Mat<S> da2 = W3.transpose() * dlogits;
  da2.array() *= S(1) - hc.a2.array().square();
  dW2.noalias() += da2 * hc.a1.transpose();
  db2 += da2.rowwise().sum();
  Mat<S> da1 = W2.transpose() * da2;
  da1.array() *= S(1) - hc.a1.array().square();
  dW1.noalias() += da1 * z.transpose();
  db1 += da1.rowwise().sum();
  dz.noalias() += W1.transpose() * da1;
}

std::vector<int> labels_of(const EncodedSet& data, const std::vector<int>& batch, bool subject) {
  std::vector<int> out;
  out.reserve(batch.size());
  for (int idx : batch) out.push_back(subject ? data.items[idx].subject : data.items[idx].object);
  return out;
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Joint:
      return "joint";
    case Mode::Subject:
      return "subject";
    case Mode::Object:
      return "object";
  }
  return "joint";
}

Mode mode_from_string(std::string_view s) {
  for (Mode m : {Mode::Joint, Mode::Subject, Mode::Object})
    if (to_string(m) == s) return m;
  throw InvalidArgument("unknown training mode '" + std::string(s) + "'");
}

void ModelShape::validate() const {
  if (embedding_dim <= 0 || hidden <= 0 || mlp1 <= 0 || mlp2 <= 0)
    throw InvalidArgument("model dimensions must be positive");
}

template <typename S>
std::vector<NamedTensor<Mat<S>>> Params<S>::tensors() {
  return {{"word_emb", &word_emb}, {"ngram_emb", &ngram_emb}, {"fw_W", &fw_W},
          {"fw_U", &fw_U},         {"fw_b", &fw_b},           {"bw_W", &bw_W},
          {"bw_U", &bw_U},         {"bw_b", &bw_b},           {"subj_W1", &subj_W1},
          {"subj_b1", &subj_b1},   {"subj_W2", &subj_W2},     {"subj_b2", &subj_b2},
          {"subj_W3", &subj_W3},   {"subj_b3", &subj_b3},     {"obj_W1", &obj_W1},
          {"obj_b1", &obj_b1},     {"obj_W2", &obj_W2},       {"obj_b2", &obj_b2},
          {"obj_W3", &obj_W3},     {"obj_b3", &obj_b3}};
}

template <typename S>
std::vector<NamedTensor<const Mat<S>>> Params<S>::tensors() const {
  std::vector<NamedTensor<const Mat<S>>> out;
  for (const NamedTensor<Mat<S>>& t : const_cast<Params*>(this)->tensors())
    out.push_back({t.name, t.value});
  return out;
}

template <typename S>
void Params<S>::set_zero() {
  for (auto& t : tensors()) t.value->setZero();
}

template <typename S>
Params<S> Params<S>::zeros_like() const {
  Params out = *this;
  out.set_zero();
  return out;
}

template <typename S>
bool Params<S>::all_finite() const {
  for (const auto& t : tensors())
    if (!t.value->allFinite()) return false;
  return true;
}

template <typename S>
std::size_t Params<S>::size() const {
  std::size_t n = 0;
  for (const auto& t : tensors()) n += static_cast<std::size_t>(t.value->size());
  return n;
}

template <typename S>
Params<S> init_params(const ModelShape& shape, int word_rows, int ngram_rows, std::uint64_t seed) {
  shape.validate();
  if (word_rows < 1 || ngram_rows < 0) throw InvalidArgument("bad vocabulary size");
  const int D = shape.embedding_dim;
  const int H = shape.hidden;
  std::mt19937_64 rng(seed);
  Params<S> p;
  p.word_emb.resize(D, word_rows);
  p.ngram_emb.resize(D, ngram_rows);
  fill_uniform(p.word_emb, 0.1, rng);
  fill_uniform(p.ngram_emb, 0.1, rng);
  const double lstm_bound = 1.0 / std::sqrt(static_cast<double>(D + H));
  for (auto [W, U, b] : {std::tuple{&p.fw_W, &p.fw_U, &p.fw_b}, std::tuple{&p.bw_W, &p.bw_U, &p.bw_b}}) {
    W->resize(4 * H, D);
    U->resize(4 * H, H);
    fill_uniform(*W, lstm_bound, rng);
    fill_uniform(*U, lstm_bound, rng);
    b->setZero(4 * H, 1);
    b->middleRows(H, H).setOnes();
  }
  auto head = [&](Mat<S>& W1, Mat<S>& b1, Mat<S>& W2, Mat<S>& b2, Mat<S>& W3, Mat<S>& b3,
                  int classes) {
    W1.resize(shape.mlp1, 2 * H);
    W2.resize(shape.mlp2, shape.mlp1);
    W3.resize(classes, shape.mlp2);
    fill_uniform(W1, 1.0 / std::sqrt(2.0 * H), rng);
    fill_uniform(W2, 1.0 / std::sqrt(static_cast<double>(shape.mlp1)), rng);
    fill_uniform(W3, 1.0 / std::sqrt(static_cast<double>(shape.mlp2)), rng);
    b1.setZero(shape.mlp1, 1);
    b2.setZero(shape.mlp2, 1);
    b3.setZero(classes, 1);
  };
  head(p.subj_W1, p.subj_b1, p.subj_W2, p.subj_b2, p.subj_W3, p.subj_b3, 2);
  head(p.obj_W1, p.obj_b1, p.obj_W2, p.obj_b2, p.obj_W3, p.obj_b3, 3);
  return p;
}

int subject_label(Plurality p) {
  if (p == Plurality::Singular) return 0;
  if (p == Plurality::Plural) return 1;
  throw InvalidArgument("subject label must be sg or pl");
}

int object_label(Plurality p) {
  if (p == Plurality::Singular) return 0;
  if (p == Plurality::Plural) return 1;
  if (p == Plurality::None) return 2;
  throw InvalidArgument("object label must be sg, pl or none");
}

EncodedSet encode(const Vocab& vocab, const std::vector<PredictionInstance>& instances) {
  EncodedSet out;
  std::unordered_map<std::string, int> type_of;
  auto type_id = [&](const std::string& form) {
    auto [it, fresh] = type_of.emplace(form, static_cast<int>(out.types.word.size()));
    if (fresh) {
      out.types.word.push_back(vocab.word_id(form));
      out.types.ngrams.push_back(vocab.ngram_ids(form));
    }
    return it->second;
  };
  out.items.reserve(instances.size());
  for (const PredictionInstance& inst : instances) {
    const int p = inst.target_index;
    if (p < 0 || p >= static_cast<int>(inst.tokens.size()) || inst.tokens[p] != kVerbPlaceholder)
      throw InvalidArgument("instance " + inst.meta.sent_id + " has no placeholder at target_index");
    EncodedInstance e;
    for (int k = 0; k < p; ++k) e.left.push_back(type_id(inst.tokens[k]));
    for (int k = static_cast<int>(inst.tokens.size()) - 1; k > p; --k)
      e.right.push_back(type_id(inst.tokens[k]));
    e.subject = subject_label(inst.subject);
    e.object = object_label(inst.object);
    out.items.push_back(std::move(e));
  }
  return out;
}

template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, 1> embed_word(const Params<S>& p, const Vocab& vocab,
                                               std::string_view word) {
  if (word.empty()) throw InvalidArgument("cannot embed an empty word");
  Eigen::Matrix<S, Eigen::Dynamic, 1> e = p.word_emb.col(vocab.word_id(word));
  for (int ng : vocab.ngram_ids(word)) e += p.ngram_emb.col(ng);
  return e;
}

template <typename S>
S forward(const Params<S>& p, const EncodedSet& data, const std::vector<int>& batch, Mode mode,
          Workspace<S>& ws) {
  const Eigen::Index D = p.word_emb.rows();
  const Eigen::Index H = p.fw_U.cols();
  const int B = static_cast<int>(batch.size());
  ws.batch = batch;
  ws.unique_types.clear();
  std::unordered_map<int, int> slot;
  std::vector<const std::vector<int>*> left, right;
  left.reserve(B);
  right.reserve(B);
  for (int idx : batch) {
    const EncodedInstance& e = data.items.at(idx);
    left.push_back(&e.left);
    right.push_back(&e.right);
    for (const auto* seq : {&e.left, &e.right})
      for (int t : *seq)
        if (slot.emplace(t, static_cast<int>(ws.unique_types.size())).second)
          ws.unique_types.push_back(t);
  }
  ws.emb.resize(D, static_cast<Eigen::Index>(ws.unique_types.size()));
  for (std::size_t u = 0; u < ws.unique_types.size(); ++u) {
    const int t = ws.unique_types[u];
    auto col = ws.emb.col(static_cast<Eigen::Index>(u));
    col = p.word_emb.col(data.types.word[t]);
    for (int ng : data.types.ngrams[t]) col += p.ngram_emb.col(ng);
  }
  run_direction(p.fw_W, p.fw_U, p.fw_b, ws.emb, left, slot, ws.fw);
  run_direction(p.bw_W, p.bw_U, p.bw_b, ws.emb, right, slot, ws.bw);
  ws.z.resize(2 * H, B);
  ws.z.topRows(H) = ws.fw.h.rightCols(B);
  ws.z.bottomRows(H) = ws.bw.h.rightCols(B);

  const S ls = head_forward(p.subj_W1, p.subj_b1, p.subj_W2, p.subj_b2, p.subj_W3, p.subj_b3,
                            ws.z, labels_of(data, batch, true), ws.subj);
  const S lo = head_forward(p.obj_W1, p.obj_b1, p.obj_W2, p.obj_b2, p.obj_W3, p.obj_b3, ws.z,
                            labels_of(data, batch, false), ws.obj);
  S loss = 0;
  if (mode != Mode::Object) loss += ls;
  if (mode != Mode::Subject) loss += lo;
  return B == 0 ? S(0) : loss / static_cast<S>(B);
}

template <typename S>
void backward(const Params<S>& p, const EncodedSet& data, Mode mode, Workspace<S>& ws,
              Params<S>& grad, const BackwardFault& fault) {
  const Eigen::Index H = p.fw_U.cols();
  const int B = static_cast<int>(ws.batch.size());
  if (B == 0) return;
  const S scale = S(1) / static_cast<S>(B);
  Mat<S> dz = Mat<S>::Zero(2 * H, B);
  if (mode != Mode::Object)
    head_backward(p.subj_W1, p.subj_W2, p.subj_W3, ws.z, labels_of(data, ws.batch, true), scale,
                  ws.subj, grad.subj_W1, grad.subj_b1, grad.subj_W2, grad.subj_b2, grad.subj_W3,
                  grad.subj_b3, dz);
  if (mode != Mode::Subject)
    head_backward(p.obj_W1, p.obj_W2, p.obj_W3, ws.z, labels_of(data, ws.batch, false), scale,
                  ws.obj, grad.obj_W1, grad.obj_b1, grad.obj_W2, grad.obj_b2, grad.obj_W3,
                  grad.obj_b3, dz);
  Mat<S> demb = Mat<S>::Zero(ws.emb.rows(), ws.emb.cols());
  backprop_direction(p.fw_W, p.fw_U, ws.fw, Mat<S>(dz.topRows(H)), grad.fw_W, grad.fw_U,
                     grad.fw_b, demb, fault);
  backprop_direction(p.bw_W, p.bw_U, ws.bw, Mat<S>(dz.bottomRows(H)), grad.bw_W, grad.bw_U,
                     grad.bw_b, demb, fault);
  for (std::size_t u = 0; u < ws.unique_types.size(); ++u) {
    const int t = ws.unique_types[u];
    const auto col = demb.col(static_cast<Eigen::Index>(u));
    grad.word_emb.col(data.types.word[t]) += col;
    for (int ng : data.types.ngrams[t]) grad.ngram_emb.col(ng) += col;
  }
}

template struct Params<float>;
template struct Params<double>;
template Params<float> init_params<float>(const ModelShape&, int, int, std::uint64_t);
template Params<double> init_params<double>(const ModelShape&, int, int, std::uint64_t);
template Eigen::Matrix<float, Eigen::Dynamic, 1> embed_word<float>(const Params<float>&,
                                                                   const Vocab&, std::string_view);
template Eigen::Matrix<double, Eigen::Dynamic, 1> embed_word<double>(const Params<double>&,
                                                                     const Vocab&,
                                                                     std::string_view);
template float forward<float>(const Params<float>&, const EncodedSet&, const std::vector<int>&,
                              Mode, Workspace<float>&);
template double forward<double>(const Params<double>&, const EncodedSet&,
                                const std::vector<int>&, Mode, Workspace<double>&);
template void backward<float>(const Params<float>&, const EncodedSet&, Mode, Workspace<float>&,
                              Params<float>&, const BackwardFault&);
template void backward<double>(const Params<double>&, const EncodedSet&, Mode,
                               Workspace<double>&, Params<double>&, const BackwardFault&);

}  // namespace typology::net
