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

// Reverse-mode differentiation tape.
//
// Nodes are appended in construction order, which is also a valid
// topological order: every node's inputs precede it. A node is evaluated as
// soon as all of its inputs carry values, so graphs built from concrete
// inputs and parameters behave eagerly. Graphs that start from placeholders
// stay unevaluated until Forward() supplies the placeholder values.
//
// Forward() may be called again after parameters or inputs change; it
// recomputes every derived node in order. This is what the finite-difference
// checks rely on.
//
// A tape has a single writer. Independent tapes may run concurrently as long
// as parameters are not mutated meanwhile.

#ifndef CLORE_DIFFMATH_TAPE_H_
#define CLORE_DIFFMATH_TAPE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "clore/error.h"
#include "clore/diffmath/parameter.h"
#include "clore/diffmath/value.h"

namespace clore::diff {

// Handle to a node on a tape.
struct Var {
  std::uint32_t id = 0;
  bool operator==(const Var&) const = default;
};

enum class Op : std::uint8_t {
  kInput,
  kPlaceholder,
  kParam,
  kAdd,
  kSub,
  kMul,
  kScale,
  kMatVec,
  kMatVecT,
  kConcat,
  kMeanRows,
  kMean,
  kSum,
  kDot,
  kSigmoid,
  kTanh,
  kSoftplus,
  kSoftmax,
  kLogit,
  kCosine,
  kCosineRows,
  kReduceMin,
  kReduceMax,
  kGru,
  kGatherRows,
  kPick,
  kCrossEntropy,
};

const char* OpName(Op op);

// Raised when primitive input shapes are incompatible. Carries the id the
// offending node would have received.
class ShapeError : public Error {
 public:
  ShapeError(std::uint32_t node, const std::string& what);
  std::uint32_t node() const { return node_; }

 private:
  std::uint32_t node_;
};

// Raised when a forward value is NaN or infinite.
class NonFiniteError : public Error {
 public:
  NonFiniteError(std::uint32_t node, const std::string& what);
  std::uint32_t node() const { return node_; }

 private:
  std::uint32_t node_;
};

// Raised on misuse of the tape, e.g. backward before forward.
class TapeStateError : public Error {
 public:
  using Error::Error;
};

// Clamp bounds applied to the argument of Logit.
inline constexpr double kLogitEps = 1e-7;

class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaves.
  Var Input(Value v, std::string name = "");
  Var Constant(double x) { return Input(Value::Scalar(x)); }
  Var Placeholder(std::string name, Shape shape);
  // Binds a parameter by reference. Binding the same parameter twice returns
  // the same node.
  Var Param(const Parameter& p);

  // Elementwise, identical shapes.
  Var Add(Var a, Var b);
  Var Sub(Var a, Var b);
  Var Mul(Var a, Var b);
  // a * s where s is a scalar node.
  Var Scale(Var a, Var s);

  // m (r x c) times v (c) -> r.
  Var MatVec(Var m, Var v);
  // transpose(m) (c x r) times v (r) -> c.
  Var MatVecT(Var m, Var v);

  // Stacks scalars and vectors into one vector.
  Var Concat(std::span<const Var> parts);
  // Mean over rows of a K x d matrix -> d.
  Var MeanRows(Var m);
  Var Mean(Var v);
  Var Sum(Var v);
  Var Dot(Var a, Var b);

  Var Sigmoid(Var a);
  Var Tanh(Var a);
  Var Softplus(Var a);
  Var Softmax(Var v);
  // log(u / (1 - u)) with u clamped to [kLogitEps, 1 - kLogitEps]. The clamped
  // region has zero gradient.
  Var Logit(Var a);

  // Cosine similarity of two vectors; 0 (and zero gradient) when either norm
  // is zero.
  Var Cosine(Var u, Var v);
  // Cosine of every row of m (K x d) against v (d) -> K.
  Var CosineRows(Var m, Var v);

  // Subgradient flows to the selected entry only; ties go to the lowest
  // index.
  Var ReduceMin(Var v);
  Var ReduceMax(Var v);

  // Gated recurrent update. Gate matrices are d x (d_in + d) over [x; h],
  // biases are d. Candidate state uses [x; r * h].
  Var Gru(Var x, Var h, Var w_update, Var w_reset, Var w_cand, Var b_update,
          Var b_reset, Var b_cand);

  // Rows of table (n x d) selected by ids -> K x d.
  Var GatherRows(Var table, std::vector<std::size_t> ids);
  Var Pick(Var v, std::size_t index);
  // logsumexp(logits) - logits[gold].
  Var CrossEntropy(Var logits, std::size_t gold);

  // Names `v` as a forward output.
  void MarkOutput(const std::string& name, Var v);

  // Assigns placeholder values by name and (re)evaluates every derived node.
  // Returns the marked outputs.
  std::map<std::string, Value> Forward(
      const std::map<std::string, Value>& inputs = {});

  // Accumulates d(output)/d(node) for every node. `output` must be scalar.
  void Backward(Var output);

  // Adds the gradient of p's node (if p is bound on this tape) into p.grad,
  // skipping frozen rows. Requires Backward().
  void AccumulateGrad(Parameter& p) const;

  const Value& value(Var v) const;
  const Value& grad(Var v) const;
  bool evaluated(Var v) const { return nodes_.at(v.id).evaluated; }
  // Selected index of a ReduceMin/ReduceMax node.
  std::size_t selected(Var v) const;
  // Smallest gap between the selected entry and the closest differing entry
  // over all ReduceMin/ReduceMax nodes; +inf when there are none.
  double min_tie_margin() const;

  std::size_t size() const { return nodes_.size(); }
  // Drops every node with id >= n, along with parameter bindings,
  // placeholders and outputs that refer to them, and any gradients. Vars
  // with id < n stay valid.
  void Truncate(std::size_t n);
  Op op(Var v) const { return nodes_.at(v.id).op; }

 private:
  struct Node {
    Op op;
    Shape shape;
    std::vector<std::uint32_t> inputs;
    Value value;
    const Parameter* param = nullptr;
    std::string name;
    std::vector<std::size_t> indices;
    std::vector<double> cache;
    double margin = 0.0;
    bool evaluated = false;
  };

  Var Push(Node node);
  Var Unary(Op op, Var a);
  const Shape& shape_of(Var v) const;
  void Check(bool ok, const std::string& what) const;
  const Value& val(std::uint32_t id) const;
  std::uint32_t next_id() const {
    return static_cast<std::uint32_t>(nodes_.size());
  }
  void Evaluate(Node& node);
  void Propagate(std::uint32_t id, std::vector<Value>& grads) const;

  std::vector<Node> nodes_;
  std::map<const Parameter*, std::uint32_t> param_nodes_;
  std::map<std::string, std::uint32_t> placeholders_;
  std::map<std::string, std::uint32_t> outputs_;
  std::vector<Value> grads_;
  bool has_grads_ = false;
};

}  // namespace clore::diff

#endif  // CLORE_DIFFMATH_TAPE_H_
