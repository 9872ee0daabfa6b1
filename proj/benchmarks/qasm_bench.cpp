// Copyright 2026 The oscqasm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "oscqasm/qasm/circuit.hpp"

using namespace oscqasm;

namespace {

std::string random_program(int qubits, int gates) {
  std::mt19937_64 rng(1);
  const char* one[] = {"h", "x", "t", "sx", "rz(0.3)", "u3(0.1,0.2,0.3)"};
  std::string s = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(qubits) + "];\ncreg c[" +
                  std::to_string(qubits) + "];\n";
  for (int g = 0; g < gates; ++g) {
    const int q = static_cast<int>(rng() % qubits);
    if (rng() % 3 == 0) {
      s += "cx q[" + std::to_string(q) + "],q[" + std::to_string((q + 1) % qubits) + "];\n";
    } else {
      s += std::string(one[rng() % 6]) + " q[" + std::to_string(q) + "];\n";
    }
  }
  return s + "measure q -> c;\n";
}

void BM_CompileBell(benchmark::State& state) {
  const std::string src =
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\nh q[0];\ncx q[0],q[1];\nmeasure q -> c;\n";
  for (auto _ : state) benchmark::DoNotOptimize(qasm::compile(src));
}
BENCHMARK(BM_CompileBell);

void BM_CompileRandom(benchmark::State& state) {
  const std::string src = random_program(16, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qasm::compile(src));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CompileRandom)->Arg(100)->Arg(1000)->Arg(10000);

void BM_CompileCcxHeavy(benchmark::State& state) {
  std::string src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n";
  for (int i = 0; i < 200; ++i) src += "ccx q[0],q[1],q[2];\ncswap q[0],q[1],q[2];\n";
  for (auto _ : state) benchmark::DoNotOptimize(qasm::compile(src));
}
BENCHMARK(BM_CompileCcxHeavy);

}  // namespace
