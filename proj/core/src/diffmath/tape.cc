/*
 * Copyright 2026 The clore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "clore/diffmath/tape.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace clore::diff {
namespace {

double StableSigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double StableSoftplus(double x) {
  return std::log1p(std::exp(-std::abs(x))) + std::max(x, 0.0);
}

double DotSpan(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> a) { return std::sqrt(DotSpan(a, a)); }

// Index of the extreme entry (lowest index on ties) and the gap to the
// nearest entry with a different value. Exact duplicates are skipped: they
// arise from repeated inputs (the same token twice) and move together under
// any perturbation.
std::pair<std::size_t, double> Select(std::span<const double> v, bool want_max) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (want_max ? v[i] > v[best] : v[i] < v[best]) best = i;
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != v[best]) margin = std::min(margin, std::abs(v[i] - v[best]));
  }
  return {best, margin};
}

}  // namespace

const char* OpName(Op op) {
  switch (op) {
    case Op::kInput: return "input";
    case Op::kPlaceholder: return "placeholder";
    case Op::kParam: return "param";
    case Op::kAdd: return "add";
    case Op::kSub: return "sub";
    case Op::kMul: return "mul";
    case Op::kScale: return "scale";
    case Op::kMatVec: return "matvec";
    case Op::kMatVecT: return "matvec_t";
    case Op::kConcat: return "concat";
    case Op::kMeanRows: return "mean_rows";
    case Op::kMean: return "mean";
    case Op::kSum: return "sum";
    case Op::kDot: return "dot";
    case Op::kSigmoid: return "sigmoid";
    case Op::kTanh: return "tanh";
    case Op::kSoftplus: return "softplus";
    case Op::kSoftmax: return "softmax";
    case Op::kLogit: return "logit";
    case Op::kCosine: return "cosine";
    case Op::kCosineRows: return "cosine_rows";
    case Op::kReduceMin: return "reduce_min";
    case Op::kReduceMax: return "reduce_max";
    case Op::kGru: return "gru";
    case Op::kGatherRows: return "gather_rows";
    case Op::kPick: return "pick";
    case Op::kCrossEntropy: return "cross_entropy";
  }
  return "?";
}

ShapeError::ShapeError(std::uint32_t node, const std::string& what)
    : Error("shape mismatch at node " + std::to_string(node) + ": " + what),
      node_(node) {}

NonFiniteError::NonFiniteError(std::uint32_t node, const std::string& what)
    : Error("non-finite value at node " + std::to_string(node) + ": " + what),
      node_(node) {}

const Shape& Tape::shape_of(Var v) const {
  if (v.id >= nodes_.size()) {
    throw TapeStateError("unknown node " + std::to_string(v.id));
  }
  return nodes_[v.id].shape;
}

void Tape::Check(bool ok, const std::string& what) const {
  if (!ok) throw ShapeError(next_id(), what);
}

const Value& Tape::val(std::uint32_t id) const {
  const Node& n = nodes_[id];
  return n.param != nullptr ? n.param->value : n.value;
}

const Value& Tape::value(Var v) const {
  if (v.id >= nodes_.size() || !nodes_[v.id].evaluated) {
    throw TapeStateError("node " + std::to_string(v.id) + " has no value");
  }
  return val(v.id);
}

const Value& Tape::grad(Var v) const {
  if (!has_grads_ || v.id >= grads_.size()) {
    throw TapeStateError("no gradient for node " + std::to_string(v.id));
  }
  return grads_[v.id];
}

std::size_t Tape::selected(Var v) const {
  const Node& n = nodes_.at(v.id);
  if (n.op != Op::kReduceMin && n.op != Op::kReduceMax) {
    throw TapeStateError("node " + std::to_string(v.id) + " is not a reduction");
  }
  if (!n.evaluated) throw TapeStateError("reduction not evaluated");
  return n.indices.at(0);
}

void Tape::Truncate(std::size_t n) {
  if (n >= nodes_.size()) return;
  nodes_.resize(n);
  const auto drop = [n](auto& m) {
    std::erase_if(m, [n](const auto& kv) { return kv.second >= n; });
  };
  drop(param_nodes_);
  drop(placeholders_);
  drop(outputs_);
  grads_.clear();
  has_grads_ = false;
}

double Tape::min_tie_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Node& n : nodes_) {
    if ((n.op == Op::kReduceMin || n.op == Op::kReduceMax) && n.evaluated) {
      m = std::min(m, n.margin);
    }
  }
  return m;
}

Var Tape::Push(Node node) {
  node.evaluated = std::all_of(
      node.inputs.begin(), node.inputs.end(),
      [this](std::uint32_t id) { return nodes_[id].evaluated; });
  nodes_.push_back(std::move(node));
  Node& n = nodes_.back();
  if (n.evaluated && !n.inputs.empty()) Evaluate(n);
  has_grads_ = false;
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Var Tape::Input(Value v, std::string name) {
  Node n{.op = Op::kInput, .shape = v.shape()};
  n.value = std::move(v);
  n.name = std::move(name);
  n.evaluated = true;
  nodes_.push_back(std::move(n));
  if (!nodes_.back().value.AllFinite()) {
    throw NonFiniteError(next_id() - 1, "input");
  }
  return Var{next_id() - 1};
}

Var Tape::Placeholder(std::string name, Shape shape) {
  if (placeholders_.count(name) != 0) {
    throw TapeStateError("duplicate placeholder '" + name + "'");
  }
  Node n{.op = Op::kPlaceholder, .shape = shape};
  n.name = name;
  nodes_.push_back(std::move(n));
  placeholders_[name] = next_id() - 1;
  return Var{next_id() - 1};
}

Var Tape::Param(const Parameter& p) {
  if (auto it = param_nodes_.find(&p); it != param_nodes_.end()) {
    return Var{it->second};
  }
  Node n{.op = Op::kParam, .shape = p.value.shape()};
  n.param = &p;
  n.name = p.name;
  n.evaluated = true;
  nodes_.push_back(std::move(n));
  param_nodes_[&p] = next_id() - 1;
  return Var{next_id() - 1};
}

Var Tape::Add(Var a, Var b) {
  Check(shape_of(a) == shape_of(b), "add " + shape_of(a).ToString() + " + " +
                                        shape_of(b).ToString());
  return Push(Node{.op = Op::kAdd, .shape = shape_of(a), .inputs = {a.id, b.id}});
}

Var Tape::Sub(Var a, Var b) {
  Check(shape_of(a) == shape_of(b), "sub " + shape_of(a).ToString() + " - " +
                                        shape_of(b).ToString());
  return Push(Node{.op = Op::kSub, .shape = shape_of(a), .inputs = {a.id, b.id}});
}

Var Tape::Mul(Var a, Var b) {
  Check(shape_of(a) == shape_of(b), "mul " + shape_of(a).ToString() + " * " +
                                        shape_of(b).ToString());
  return Push(Node{.op = Op::kMul, .shape = shape_of(a), .inputs = {a.id, b.id}});
}

Var Tape::Scale(Var a, Var s) {
  Check(shape_of(s).is_scalar(), "scale factor must be scalar, got " +
                                     shape_of(s).ToString());
  return Push(
      Node{.op = Op::kScale, .shape = shape_of(a), .inputs = {a.id, s.id}});
}

Var Tape::MatVec(Var m, Var v) {
  const Shape& sm = shape_of(m);
  const Shape& sv = shape_of(v);
  Check(sv.is_vector() && sm.cols == sv.rows,
        "matvec " + sm.ToString() + " . " + sv.ToString());
  return Push(Node{
      .op = Op::kMatVec, .shape = Shape{sm.rows, 1}, .inputs = {m.id, v.id}});
}

Var Tape::MatVecT(Var m, Var v) {
  const Shape& sm = shape_of(m);
  const Shape& sv = shape_of(v);
  Check(sv.is_vector() && sm.rows == sv.rows,
        "matvec_t " + sm.ToString() + "^T . " + sv.ToString());
  return Push(Node{
      .op = Op::kMatVecT, .shape = Shape{sm.cols, 1}, .inputs = {m.id, v.id}});
}

Var Tape::Concat(std::span<const Var> parts) {
  Check(!parts.empty(), "concat of nothing");
  Node n{.op = Op::kConcat};
  std::size_t total = 0;
  for (Var p : parts) {
    Check(shape_of(p).is_vector(),
          "concat part must be a vector, got " + shape_of(p).ToString());
    total += shape_of(p).rows;
    n.inputs.push_back(p.id);
  }
  n.shape = Shape{total, 1};
  return Push(std::move(n));
}

Var Tape::MeanRows(Var m) {
  Check(shape_of(m).rows >= 1, "mean over zero rows");
  return Push(Node{.op = Op::kMeanRows,
                   .shape = Shape{shape_of(m).cols, 1},
                   .inputs = {m.id}});
}

Var Tape::Mean(Var v) {
  Check(shape_of(v).size() >= 1, "mean of empty value");
  return Push(Node{.op = Op::kMean, .shape = Shape{1, 1}, .inputs = {v.id}});
}

Var Tape::Sum(Var v) {
  return Push(Node{.op = Op::kSum, .shape = Shape{1, 1}, .inputs = {v.id}});
}

Var Tape::Dot(Var a, Var b) {
  Check(shape_of(a) == shape_of(b), "dot " + shape_of(a).ToString() + " . " +
                                        shape_of(b).ToString());
  return Push(
      Node{.op = Op::kDot, .shape = Shape{1, 1}, .inputs = {a.id, b.id}});
}

Var Tape::Unary(Op op, Var a) {
  return Push(Node{.op = op, .shape = shape_of(a), .inputs = {a.id}});
}

Var Tape::Sigmoid(Var a) { return Unary(Op::kSigmoid, a); }
Var Tape::Tanh(Var a) { return Unary(Op::kTanh, a); }
Var Tape::Softplus(Var a) { return Unary(Op::kSoftplus, a); }
Var Tape::Logit(Var a) { return Unary(Op::kLogit, a); }

Var Tape::Softmax(Var v) {
  Check(shape_of(v).is_vector() && shape_of(v).rows >= 1,
        "softmax needs a nonempty vector, got " + shape_of(v).ToString());
  return Unary(Op::kSoftmax, v);
}

Var Tape::Cosine(Var u, Var v) {
  Check(shape_of(u) == shape_of(v) && shape_of(u).is_vector(),
        "cosine " + shape_of(u).ToString() + " vs " + shape_of(v).ToString());
  return Push(
      Node{.op = Op::kCosine, .shape = Shape{1, 1}, .inputs = {u.id, v.id}});
}

Var Tape::CosineRows(Var m, Var v) {
  const Shape& sm = shape_of(m);
  const Shape& sv = shape_of(v);
  Check(sv.is_vector() && sm.cols == sv.rows && sm.rows >= 1,
        "cosine_rows " + sm.ToString() + " vs " + sv.ToString());
  return Push(Node{.op = Op::kCosineRows,
                   .shape = Shape{sm.rows, 1},
                   .inputs = {m.id, v.id}});
}

Var Tape::ReduceMin(Var v) {
  Check(shape_of(v).is_vector() && shape_of(v).rows >= 1,
        "reduce_min needs a nonempty vector");
  return Push(Node{.op = Op::kReduceMin, .shape = Shape{1, 1}, .inputs = {v.id}});
}

Var Tape::ReduceMax(Var v) {
  Check(shape_of(v).is_vector() && shape_of(v).rows >= 1,
        "reduce_max needs a nonempty vector");
  return Push(Node{.op = Op::kReduceMax, .shape = Shape{1, 1}, .inputs = {v.id}});
}

Var Tape::Gru(Var x, Var h, Var w_update, Var w_reset, Var w_cand,
              Var b_update, Var b_reset, Var b_cand) {
  const Shape& sx = shape_of(x);
  const Shape& sh = shape_of(h);
  Check(sx.is_vector() && sh.is_vector(), "gru state and input must be vectors");
  const Shape gate{sh.rows, sx.rows + sh.rows};
  const Shape bias{sh.rows, 1};
  for (Var w : {w_update, w_reset, w_cand}) {
    Check(shape_of(w) == gate, "gru gate matrix " + shape_of(w).ToString() +
                                   ", expected " + gate.ToString());
  }
  for (Var b : {b_update, b_reset, b_cand}) {
    Check(shape_of(b) == bias, "gru bias " + shape_of(b).ToString() +
                                   ", expected " + bias.ToString());
  }
  return Push(Node{.op = Op::kGru,
                   .shape = sh,
                   .inputs = {x.id, h.id, w_update.id, w_reset.id, w_cand.id,
                              b_update.id, b_reset.id, b_cand.id}});
}

Var Tape::GatherRows(Var table, std::vector<std::size_t> ids) {
  const Shape& st = shape_of(table);
  Check(!ids.empty(), "gather of zero rows");
  for (std::size_t id : ids) {
    Check(id < st.rows, "gather row " + std::to_string(id) + " of " +
                            st.ToString());
  }
  Node n{.op = Op::kGatherRows,
         .shape = Shape{ids.size(), st.cols},
         .inputs = {table.id}};
  n.indices = std::move(ids);
  return Push(std::move(n));
}

Var Tape::Pick(Var v, std::size_t index) {
  Check(index < shape_of(v).size(), "pick " + std::to_string(index) + " of " +
                                        shape_of(v).ToString());
  Node n{.op = Op::kPick, .shape = Shape{1, 1}, .inputs = {v.id}};
  n.indices = {index};
  return Push(std::move(n));
}

Var Tape::CrossEntropy(Var logits, std::size_t gold) {
  Check(shape_of(logits).is_vector() && gold < shape_of(logits).rows,
        "cross_entropy gold " + std::to_string(gold) + " of " +
            shape_of(logits).ToString());
  Node n{.op = Op::kCrossEntropy, .shape = Shape{1, 1}, .inputs = {logits.id}};
  n.indices = {gold};
  return Push(std::move(n));
}

void Tape::MarkOutput(const std::string& name, Var v) {
  shape_of(v);
  outputs_[name] = v.id;
}

void Tape::Evaluate(Node& node) {
  auto in = [&](std::size_t i) -> const Value& { return val(node.inputs[i]); };
  Value out(node.shape);
  switch (node.op) {
    case Op::kInput:
    case Op::kPlaceholder:
    case Op::kParam:
      return;
    case Op::kAdd:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = in(0)[i] + in(1)[i];
      break;
    case Op::kSub:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = in(0)[i] - in(1)[i];
      break;
    case Op::kMul:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = in(0)[i] * in(1)[i];
      break;
    case Op::kScale: {
      const double s = in(1).scalar();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = in(0)[i] * s;
      break;
    }
    case Op::kMatVec: {
      const Value& m = in(0);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        out[r] = DotSpan(m.row(r), in(1).data());
      }
      break;
    }
    case Op::kMatVecT: {
      const Value& m = in(0);
      const Value& v = in(1);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        const double vr = v[r];
        auto row = m.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c) out[c] += row[c] * vr;
      }
      break;
    }
    case Op::kConcat: {
      std::size_t off = 0;
      for (std::size_t i = 0; i < node.inputs.size(); ++i) {
        for (double x : in(i).data()) out[off++] = x;
      }
      break;
    }
    case Op::kMeanRows: {
      const Value& m = in(0);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c) out[c] += row[c];
      }
      for (std::size_t c = 0; c < m.cols(); ++c) out[c] /= double(m.rows());
      break;
    }
    case Op::kMean:
    case Op::kSum: {
      double s = 0.0;
      for (double x : in(0).data()) s += x;
      out[0] = node.op == Op::kMean ? s / double(in(0).size()) : s;
      break;
    }
    case Op::kDot:
      out[0] = DotSpan(in(0).data(), in(1).data());
      break;
    case Op::kSigmoid:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = StableSigmoid(in(0)[i]);
      break;
    case Op::kTanh:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(in(0)[i]);
      break;
    case Op::kSoftplus:
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = StableSoftplus(in(0)[i]);
      }
      break;
    case Op::kSoftmax: {
      const Value& v = in(0);
      const double mx = *std::max_element(v.data().begin(), v.data().end());
      double z = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::exp(v[i] - mx);
        z += out[i];
      }
      for (std::size_t i = 0; i < v.size(); ++i) out[i] /= z;
      break;
    }
    case Op::kLogit:
      for (std::size_t i = 0; i < out.size(); ++i) {
        const double u = std::clamp(in(0)[i], kLogitEps, 1.0 - kLogitEps);
        out[i] = std::log(u) - std::log1p(-u);
      }
      break;
    case Op::kCosine: {
      const double nu = Norm(in(0).data());
      const double nv = Norm(in(1).data());
      const double dot = DotSpan(in(0).data(), in(1).data());
      node.cache = {nu, nv};
      out[0] = (nu == 0.0 || nv == 0.0) ? 0.0 : dot / (nu * nv);
      break;
    }
    case Op::kCosineRows: {
      const Value& m = in(0);
      const double nv = Norm(in(1).data());
      node.cache.assign(m.rows() + 1, 0.0);
      node.cache[m.rows()] = nv;
      for (std::size_t r = 0; r < m.rows(); ++r) {
        const double nr = Norm(m.row(r));
        node.cache[r] = nr;
        out[r] = (nr == 0.0 || nv == 0.0)
                     ? 0.0
                     : DotSpan(m.row(r), in(1).data()) / (nr * nv);
      }
      break;
    }
    case Op::kReduceMin:
    case Op::kReduceMax: {
      auto [idx, margin] = Select(in(0).data(), node.op == Op::kReduceMax);
      node.indices = {idx};
      node.margin = margin;
      out[0] = in(0)[idx];
      break;
    }
    case Op::kGru: {
      const Value& x = in(0);
      const Value& h = in(1);
      const std::size_t dx = x.size();
      const std::size_t d = h.size();
      // cache layout: z | r | n
      node.cache.assign(3 * d, 0.0);
      double* z = node.cache.data();
      double* r = z + d;
      double* n = r + d;
      for (std::size_t i = 0; i < d; ++i) {
        auto wz = in(2).row(i);
        auto wr = in(3).row(i);
        double az = in(5)[i];
        double ar = in(6)[i];
        for (std::size_t j = 0; j < dx; ++j) {
          az += wz[j] * x[j];
          ar += wr[j] * x[j];
        }
        for (std::size_t j = 0; j < d; ++j) {
          az += wz[dx + j] * h[j];
          ar += wr[dx + j] * h[j];
        }
        z[i] = StableSigmoid(az);
        r[i] = StableSigmoid(ar);
      }
      for (std::size_t i = 0; i < d; ++i) {
        auto wn = in(4).row(i);
        double an = in(7)[i];
        for (std::size_t j = 0; j < dx; ++j) an += wn[j] * x[j];
        for (std::size_t j = 0; j < d; ++j) an += wn[dx + j] * r[j] * h[j];
        n[i] = std::tanh(an);
        out[i] = (1.0 - z[i]) * h[i] + z[i] * n[i];
      }
      break;
    }
    case Op::kGatherRows: {
      const Value& t = in(0);
      for (std::size_t k = 0; k < node.indices.size(); ++k) {
        auto src = t.row(node.indices[k]);
        std::copy(src.begin(), src.end(), out.row(k).begin());
      }
      break;
    }
    case Op::kPick:
      out[0] = in(0)[node.indices[0]];
      break;
    case Op::kCrossEntropy: {
      const Value& v = in(0);
      const double mx = *std::max_element(v.data().begin(), v.data().end());
      double z = 0.0;
      node.cache.assign(v.size(), 0.0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        node.cache[i] = std::exp(v[i] - mx);
        z += node.cache[i];
      }
      for (double& p : node.cache) p /= z;
      // In differences from the gold logit, so a confident prediction keeps
      // a loss accurate relative to its own size.
      const std::size_t gold = node.indices[0];
      const double dmax = mx - v[gold];
      double rest = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != gold) rest += std::exp(v[i] - mx);
      }
      out[0] = dmax == 0.0 ? std::log1p(rest) : dmax + std::log(std::exp(-dmax) + rest);
      break;
    }
  }
  const auto id = static_cast<std::uint32_t>(&node - nodes_.data());
  if (!out.AllFinite()) throw NonFiniteError(id, OpName(node.op));
  node.value = std::move(out);
  node.evaluated = true;
}

std::map<std::string, Value> Tape::Forward(
    const std::map<std::string, Value>& inputs) {
  for (const auto& [name, v] : inputs) {
    auto it = placeholders_.find(name);
    if (it == placeholders_.end()) {
      throw InvalidArgument("no placeholder named '" + name + "'");
    }
    Node& n = nodes_[it->second];
    if (!(v.shape() == n.shape)) {
      throw ShapeError(it->second, "placeholder '" + name + "' expects " +
                                       n.shape.ToString() + ", got " +
                                       v.shape().ToString());
    }
    if (!v.AllFinite()) throw NonFiniteError(it->second, "placeholder " + name);
    n.value = v;
    n.evaluated = true;
  }
  for (Node& n : nodes_) {
    if (n.op == Op::kPlaceholder) {
      if (!n.evaluated) {
        throw TapeStateError("placeholder '" + n.name + "' has no value");
      }
      continue;
    }
    if (n.inputs.empty()) continue;
    Evaluate(n);
  }
  has_grads_ = false;
  std::map<std::string, Value> out;
  for (const auto& [name, id] : outputs_) out[name] = val(id);
  return out;
}

void Tape::Backward(Var output) {
  if (output.id >= nodes_.size()) {
    throw TapeStateError("unknown node " + std::to_string(output.id));
  }
  for (std::uint32_t i = 0; i <= output.id; ++i) {
    if (!nodes_[i].evaluated) {
      throw TapeStateError("backward before forward: node " +
                           std::to_string(i) + " has no value");
    }
  }
  if (!nodes_[output.id].shape.is_scalar()) {
    throw ShapeError(output.id, "backward needs a scalar output, got " +
                                    nodes_[output.id].shape.ToString());
  }
  grads_.assign(nodes_.size(), Value());
  for (std::uint32_t i = 0; i <= output.id; ++i) {
    grads_[i] = Value(nodes_[i].shape);
  }
  grads_[output.id][0] = 1.0;
  for (std::uint32_t i = output.id + 1; i-- > 0;) Propagate(i, grads_);
  has_grads_ = true;
}

void Tape::Propagate(std::uint32_t id, std::vector<Value>& grads) const {
  const Node& node = nodes_[id];
  if (node.inputs.empty()) return;
  const Value& g = grads[id];
  if (std::all_of(g.data().begin(), g.data().end(),
                  [](double x) { return x == 0.0; })) {
    return;
  }
  auto in = [&](std::size_t i) -> const Value& { return val(node.inputs[i]); };
  auto gin = [&](std::size_t i) -> Value& { return grads[node.inputs[i]]; };
  const Value& out = node.value;

  switch (node.op) {
    case Op::kInput:
    case Op::kPlaceholder:
    case Op::kParam:
      return;
    case Op::kAdd:
      for (std::size_t i = 0; i < g.size(); ++i) {
        gin(0)[i] += g[i];
        gin(1)[i] += g[i];
      }
      return;
    case Op::kSub:
      for (std::size_t i = 0; i < g.size(); ++i) {
        gin(0)[i] += g[i];
        gin(1)[i] -= g[i];
      }
      return;
    case Op::kMul:
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double a = in(0)[i];
        const double b = in(1)[i];
        gin(0)[i] += g[i] * b;
        gin(1)[i] += g[i] * a;
      }
      return;
    case Op::kScale: {
      const double s = in(1).scalar();
      double ds = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        ds += g[i] * in(0)[i];
        gin(0)[i] += g[i] * s;
      }
      gin(1)[0] += ds;
      return;
    }
    case Op::kMatVec: {
      const Value& m = in(0);
      const Value& v = in(1);
      Value& gm = gin(0);
      Value& gv = gin(1);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        const double gr = g[r];
        if (gr == 0.0) continue;
        auto mrow = m.row(r);
        auto gmrow = gm.row(r);
        for (std::size_t c = 0; c < m.cols(); ++c) {
          gmrow[c] += gr * v[c];
          gv[c] += gr * mrow[c];
        }
      }
      return;
    }
    case Op::kMatVecT: {
      const Value& m = in(0);
      const Value& v = in(1);
      Value& gm = gin(0);
      Value& gv = gin(1);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        auto mrow = m.row(r);
        auto gmrow = gm.row(r);
        const double vr = v[r];
        double acc = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
          gmrow[c] += vr * g[c];
          acc += mrow[c] * g[c];
        }
        gv[r] += acc;
      }
      return;
    }
    case Op::kConcat: {
      std::size_t off = 0;
      for (std::size_t i = 0; i < node.inputs.size(); ++i) {
        Value& gi = gin(i);
        for (std::size_t j = 0; j < gi.size(); ++j) gi[j] += g[off++];
      }
      return;
    }
    case Op::kMeanRows: {
      Value& gm = gin(0);
      const double inv = 1.0 / double(gm.rows());
      for (std::size_t r = 0; r < gm.rows(); ++r) {
        auto row = gm.row(r);
        for (std::size_t c = 0; c < gm.cols(); ++c) row[c] += g[c] * inv;
      }
      return;
    }
    case Op::kMean:
    case Op::kSum: {
      Value& gv = gin(0);
      const double k =
          node.op == Op::kMean ? g[0] / double(gv.size()) : g[0];
      for (std::size_t i = 0; i < gv.size(); ++i) gv[i] += k;
      return;
    }
    case Op::kDot:
      for (std::size_t i = 0; i < in(0).size(); ++i) {
        const double a = in(0)[i];
        const double b = in(1)[i];
        gin(0)[i] += g[0] * b;
        gin(1)[i] += g[0] * a;
      }
      return;
    case Op::kSigmoid:
      for (std::size_t i = 0; i < g.size(); ++i) {
        gin(0)[i] += g[i] * out[i] * (1.0 - out[i]);
      }
      return;
    case Op::kTanh:
      for (std::size_t i = 0; i < g.size(); ++i) {
        gin(0)[i] += g[i] * (1.0 - out[i] * out[i]);
      }
      return;
    case Op::kSoftplus:
      for (std::size_t i = 0; i < g.size(); ++i) {
        gin(0)[i] += g[i] * StableSigmoid(in(0)[i]);
      }
      return;
    case Op::kSoftmax: {
      double gy = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) gy += g[i] * out[i];
      for (std::size_t i = 0; i < g.size(); ++i) {
        gin(0)[i] += out[i] * (g[i] - gy);
      }
      return;
    }
    case Op::kLogit:
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double u = in(0)[i];
        if (u < kLogitEps || u > 1.0 - kLogitEps) continue;
        gin(0)[i] += g[i] / (u * (1.0 - u));
      }
      return;
    case Op::kCosine: {
      const double nu = node.cache[0];
      const double nv = node.cache[1];
      if (nu == 0.0 || nv == 0.0) return;
      const double c = out[0];
      const Value& u = in(0);
      const Value& v = in(1);
      for (std::size_t i = 0; i < u.size(); ++i) {
        gin(0)[i] += g[0] * (v[i] / (nu * nv) - c * u[i] / (nu * nu));
        gin(1)[i] += g[0] * (u[i] / (nu * nv) - c * v[i] / (nv * nv));
      }
      return;
    }
    case Op::kCosineRows: {
      const Value& m = in(0);
      const Value& v = in(1);
      const double nv = node.cache[m.rows()];
      if (nv == 0.0) return;
      Value& gm = gin(0);
      Value& gv = gin(1);
      for (std::size_t r = 0; r < m.rows(); ++r) {
        const double nr = node.cache[r];
        if (nr == 0.0 || g[r] == 0.0) continue;
        const double c = out[r];
        auto row = m.row(r);
        auto grow = gm.row(r);
        for (std::size_t j = 0; j < m.cols(); ++j) {
          grow[j] += g[r] * (v[j] / (nr * nv) - c * row[j] / (nr * nr));
          gv[j] += g[r] * (row[j] / (nr * nv) - c * v[j] / (nv * nv));
        }
      }
      return;
    }
    case Op::kReduceMin:
    case Op::kReduceMax:
      gin(0)[node.indices[0]] += g[0];
      return;
    case Op::kGru: {
      const Value& x = in(0);
      const Value& h = in(1);
      const std::size_t dx = x.size();
      const std::size_t d = h.size();
      const double* z = node.cache.data();
      const double* r = z + d;
      const double* n = r + d;
      Value& gx = gin(0);
      Value& gh = gin(1);
      Value& gwz = gin(2);
      Value& gwr = gin(3);
      Value& gwn = gin(4);
      Value& gbz = gin(5);
      Value& gbr = gin(6);
      Value& gbn = gin(7);
      const Value& wz = in(2);
      const Value& wr = in(3);
      const Value& wn = in(4);
      std::vector<double> d_rh(d, 0.0);
      std::vector<double> a_z(d), a_r(d);
      for (std::size_t i = 0; i < d; ++i) {
        const double dn = g[i] * z[i];
        const double dz = g[i] * (n[i] - h[i]);
        gh[i] += g[i] * (1.0 - z[i]);
        const double an = dn * (1.0 - n[i] * n[i]);
        a_z[i] = dz * z[i] * (1.0 - z[i]);
        gbn[i] += an;
        auto wrow = wn.row(i);
        auto gwrow = gwn.row(i);
        for (std::size_t j = 0; j < dx; ++j) {
          gwrow[j] += an * x[j];
          gx[j] += an * wrow[j];
        }
        for (std::size_t j = 0; j < d; ++j) {
          gwrow[dx + j] += an * r[j] * h[j];
          d_rh[j] += an * wrow[dx + j];
        }
      }
      for (std::size_t j = 0; j < d; ++j) {
        gh[j] += d_rh[j] * r[j];
        const double dr = d_rh[j] * h[j];
        a_r[j] = dr * r[j] * (1.0 - r[j]);
      }
      for (std::size_t i = 0; i < d; ++i) {
        gbz[i] += a_z[i];
        gbr[i] += a_r[i];
        auto wzrow = wz.row(i);
        auto wrrow = wr.row(i);
        auto gwzrow = gwz.row(i);
        auto gwrrow = gwr.row(i);
        for (std::size_t j = 0; j < dx; ++j) {
          gwzrow[j] += a_z[i] * x[j];
          gwrrow[j] += a_r[i] * x[j];
          gx[j] += a_z[i] * wzrow[j] + a_r[i] * wrrow[j];
        }
        for (std::size_t j = 0; j < d; ++j) {
          gwzrow[dx + j] += a_z[i] * h[j];
          gwrrow[dx + j] += a_r[i] * h[j];
          gh[j] += a_z[i] * wzrow[dx + j] + a_r[i] * wrrow[dx + j];
        }
      }
      return;
    }
    case Op::kGatherRows: {
      Value& gt = gin(0);
      for (std::size_t k = 0; k < node.indices.size(); ++k) {
        auto dst = gt.row(node.indices[k]);
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += g.at(k, j);
      }
      return;
    }
    case Op::kPick:
      gin(0)[node.indices[0]] += g[0];
      return;
    case Op::kCrossEntropy: {
      Value& gv = gin(0);
      const std::size_t gold = node.indices[0];
      // p_gold - 1 without cancellation.
      double others = 0.0;
      for (std::size_t i = 0; i < gv.size(); ++i) {
        if (i != gold) others += node.cache[i];
      }
      for (std::size_t i = 0; i < gv.size(); ++i) {
        gv[i] += g[0] * (i == gold ? -others : node.cache[i]);
      }
      return;
    }
  }
}

void Tape::AccumulateGrad(Parameter& p) const {
  if (!has_grads_) throw TapeStateError("AccumulateGrad before Backward");
  auto it = param_nodes_.find(&p);
  if (it == param_nodes_.end() || it->second >= grads_.size()) return;
  const Value& g = grads_[it->second];
  if (g.size() == 0) return;
  if (p.grad.shape() != p.value.shape()) p.ZeroGrad();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    if (p.row_frozen(r)) continue;
    auto src = g.row(r);
    auto dst = p.grad.row(r);
    for (std::size_t c = 0; c < src.size(); ++c) dst[c] += src[c];
  }
}

}  // namespace clore::diff
