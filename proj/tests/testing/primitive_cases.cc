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

#include "testing/primitive_cases.h"

#include "testing/finite_difference.h"

namespace clore::testing {
namespace {

using diff::Parameter;
using diff::Shape;
using diff::Tape;
using diff::Value;
using diff::Var;

std::vector<double> RandomVec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = Normal(rng, 0.0, 1.0);
  return v;
}

// Scalar <w, v> with fixed random weights w.
Var Project(Tape& t, Var v, const std::vector<double>& w) {
  const Shape s = t.value(v).shape();
  return t.Dot(v, t.Input(Value(s, w)));
}

Parameter& Add(PrimitiveInstance& inst, const std::string& name, Shape s,
               Rng& rng, double stddev = 1.0) {
  inst.params.push_back(RandomParameter(name, s, rng, stddev));
  return inst.params.back();
}

template <typename F>
PrimitiveCase Unary(const std::string& name, std::size_t n, F op,
                    double lo = -3.0, double hi = 3.0) {
  return {name, [=](Rng& rng, PrimitiveInstance& inst) {
            Parameter& a = Add(inst, "a", Shape{n, 1}, rng);
            for (std::size_t i = 0; i < n; ++i) a.value[i] = UniformReal(rng, lo, hi);
            auto w = RandomVec(rng, n);
            inst.build = [&a, w, op](Tape& t) {
              return Project(t, (t.*op)(t.Param(a)), w);
            };
          }};
}

template <typename F>
PrimitiveCase Binary(const std::string& name, std::size_t n, F op) {
  return {name, [=](Rng& rng, PrimitiveInstance& inst) {
            Parameter& a = Add(inst, "a", Shape{n, 1}, rng);
            Parameter& b = Add(inst, "b", Shape{n, 1}, rng);
            auto w = RandomVec(rng, n);
            inst.build = [&a, &b, w, op](Tape& t) {
              return Project(t, (t.*op)(t.Param(a), t.Param(b)), w);
            };
          }};
}

std::vector<PrimitiveCase> MakeCases() {
  std::vector<PrimitiveCase> cases;
  cases.push_back(Binary("add", 5, &Tape::Add));
  cases.push_back(Binary("sub", 5, &Tape::Sub));
  cases.push_back(Binary("mul", 5, &Tape::Mul));
  cases.push_back({"scale", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& a = Add(inst, "a", Shape{3, 4}, rng);
                     Parameter& s = Add(inst, "s", Shape{1, 1}, rng);
                     auto w = RandomVec(rng, 12);
                     inst.build = [&a, &s, w](Tape& t) {
                       return Project(t, t.Scale(t.Param(a), t.Param(s)), w);
                     };
                   }});
  cases.push_back({"matvec", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& m = Add(inst, "m", Shape{4, 6}, rng);
                     Parameter& v = Add(inst, "v", Shape{6, 1}, rng);
                     auto w = RandomVec(rng, 4);
                     inst.build = [&m, &v, w](Tape& t) {
                       return Project(t, t.MatVec(t.Param(m), t.Param(v)), w);
                     };
                   }});
  cases.push_back({"matvec_t", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& m = Add(inst, "m", Shape{4, 6}, rng);
                     Parameter& v = Add(inst, "v", Shape{4, 1}, rng);
                     auto w = RandomVec(rng, 6);
                     inst.build = [&m, &v, w](Tape& t) {
                       return Project(t, t.MatVecT(t.Param(m), t.Param(v)), w);
                     };
                   }});
  cases.push_back({"concat", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& a = Add(inst, "a", Shape{3, 1}, rng);
                     Parameter& b = Add(inst, "b", Shape{1, 1}, rng);
                     Parameter& c = Add(inst, "c", Shape{2, 1}, rng);
                     auto w = RandomVec(rng, 6);
                     inst.build = [&a, &b, &c, w](Tape& t) {
                       const Var parts[] = {t.Param(a), t.Param(b), t.Param(c)};
                       return Project(t, t.Concat(parts), w);
                     };
                   }});
  cases.push_back({"mean_rows", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& m = Add(inst, "m", Shape{5, 3}, rng);
                     auto w = RandomVec(rng, 3);
                     inst.build = [&m, w](Tape& t) {
                       return Project(t, t.MeanRows(t.Param(m)), w);
                     };
                   }});
  cases.push_back({"mean", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& v = Add(inst, "v", Shape{6, 1}, rng);
                     inst.build = [&v](Tape& t) {
                       Var m = t.Mean(t.Param(v));
                       return t.Mul(m, m);
                     };
                   }});
  cases.push_back({"sum", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& v = Add(inst, "v", Shape{6, 1}, rng);
                     inst.build = [&v](Tape& t) {
                       Var s = t.Sum(t.Param(v));
                       return t.Mul(s, s);
                     };
                   }});
  cases.push_back({"dot", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& a = Add(inst, "a", Shape{6, 1}, rng);
                     Parameter& b = Add(inst, "b", Shape{6, 1}, rng);
                     inst.build = [&a, &b](Tape& t) {
                       Var d = t.Dot(t.Param(a), t.Param(b));
                       return t.Mul(d, d);
                     };
                   }});
  cases.push_back(Unary("sigmoid", 6, &Tape::Sigmoid, -6.0, 6.0));
  cases.push_back(Unary("tanh", 6, &Tape::Tanh));
  cases.push_back(Unary("softplus", 6, &Tape::Softplus, -6.0, 6.0));
  cases.push_back(Unary("softmax", 6, &Tape::Softmax));
  cases.push_back(Unary("logit", 6, &Tape::Logit, 0.05, 0.95));
  cases.push_back({"cosine", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& u = Add(inst, "u", Shape{8, 1}, rng);
                     Parameter& v = Add(inst, "v", Shape{8, 1}, rng);
                     inst.build = [&u, &v](Tape& t) {
                       return t.Cosine(t.Param(u), t.Param(v));
                     };
                   }});
  cases.push_back({"cosine_rows", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& m = Add(inst, "m", Shape{5, 8}, rng);
                     Parameter& v = Add(inst, "v", Shape{8, 1}, rng);
                     auto w = RandomVec(rng, 5);
                     inst.build = [&m, &v, w](Tape& t) {
                       return Project(t, t.CosineRows(t.Param(m), t.Param(v)), w);
                     };
                   }});
  cases.push_back({"reduce_min", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& v = Add(inst, "v", Shape{6, 1}, rng);
                     inst.build = [&v](Tape& t) {
                       Var m = t.ReduceMin(t.Param(v));
                       return t.Mul(m, m);
                     };
                   }});
  cases.push_back({"reduce_max", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& v = Add(inst, "v", Shape{6, 1}, rng);
                     inst.build = [&v](Tape& t) {
                       Var m = t.ReduceMax(t.Param(v));
                       return t.Mul(m, m);
                     };
                   }});
  cases.push_back({"gru", [](Rng& rng, PrimitiveInstance& inst) {
                     const std::size_t dx = 3;
                     const std::size_t d = 4;
                     Parameter& x = Add(inst, "x", Shape{dx, 1}, rng);
                     Parameter& h = Add(inst, "h", Shape{d, 1}, rng);
                     Parameter& wz = Add(inst, "w_update", Shape{d, dx + d}, rng, 0.5);
                     Parameter& wr = Add(inst, "w_reset", Shape{d, dx + d}, rng, 0.5);
                     Parameter& wn = Add(inst, "w_cand", Shape{d, dx + d}, rng, 0.5);
                     Parameter& bz = Add(inst, "b_update", Shape{d, 1}, rng, 0.5);
                     Parameter& br = Add(inst, "b_reset", Shape{d, 1}, rng, 0.5);
                     Parameter& bn = Add(inst, "b_cand", Shape{d, 1}, rng, 0.5);
                     auto w = RandomVec(rng, d);
                     inst.build = [&, w](Tape& t) {
                       Var out = t.Gru(t.Param(x), t.Param(h), t.Param(wz),
                                       t.Param(wr), t.Param(wn), t.Param(bz),
                                       t.Param(br), t.Param(bn));
                       return Project(t, out, w);
                     };
                   }});
  cases.push_back({"gather_rows", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& table = Add(inst, "table", Shape{5, 3}, rng);
                     auto w = RandomVec(rng, 12);
                     inst.build = [&table, w](Tape& t) {
                       return Project(t, t.GatherRows(t.Param(table), {4, 0, 4, 2}), w);
                     };
                   }});
  cases.push_back({"pick", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& v = Add(inst, "v", Shape{5, 1}, rng);
                     inst.build = [&v](Tape& t) {
                       Var p = t.Pick(t.Param(v), 3);
                       return t.Mul(p, p);
                     };
                   }});
  cases.push_back({"cross_entropy", [](Rng& rng, PrimitiveInstance& inst) {
                     Parameter& v = Add(inst, "logits", Shape{4, 1}, rng, 2.0);
                     const auto gold = static_cast<std::size_t>(UniformInt(rng, 0, 3));
                     inst.build = [&v, gold](Tape& t) {
                       return t.CrossEntropy(t.Param(v), gold);
                     };
                   }});
  return cases;
}

}  // namespace

const std::vector<PrimitiveCase>& PrimitiveCases() {
  static const std::vector<PrimitiveCase> cases = MakeCases();
  return cases;
}

PrimitiveSweep SweepPrimitive(const PrimitiveCase& c, int seeds, double step,
                              double tie_exclusion) {
  PrimitiveSweep sweep;
  for (std::uint64_t seed = 1; sweep.accepted < seeds && seed < 100000; ++seed) {
    Rng rng = MakeRng(seed, Stream::kEval, HashName(c.name));
    PrimitiveInstance inst;
    c.make(rng, inst);
    const GradCheckResult r = CheckGradients(inst.param_ptrs(), inst.build, step);
    if (r.tie_margin < tie_exclusion) {
      ++sweep.skipped_ties;
      continue;
    }
    ++sweep.accepted;
    if (r.worst_relative_error > sweep.worst_relative_error) {
      sweep.worst_relative_error = r.worst_relative_error;
      sweep.worst_parameter = r.worst_parameter;
    }
  }
  return sweep;
}

}  // namespace clore::testing
