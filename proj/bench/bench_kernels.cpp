// Serial reference kernels against their OpenMP versions, plus end-to-end
// gradient and Hessian-vector product throughput for small_cnn.

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "forget_forge/gradcore.hpp"
#include "forget_forge/kernels.hpp"
#include "forget_forge/models.hpp"
#include "forget_forge/rng.hpp"

namespace {

using namespace ff;

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

// conv1 of small_cnn on a 128-row shard.
const kernels::ConvDims kConv{128, 1, 28, 28, 8, 5, 0};
const kernels::DenseDims kDense{128, 256, 96};

template <auto Fn>
void conv_forward(benchmark::State& st) {
  auto x = random_vec(kConv.batch * kConv.in_c * kConv.in_h * kConv.in_w, 1);
  auto w = random_vec(kConv.out_c * kConv.in_c * kConv.k * kConv.k, 2);
  std::vector<double> y(kConv.batch * kConv.out_c * kConv.out_h() * kConv.out_w());
  for (auto _ : st) {
    Fn(kConv, x.data(), w.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

template <auto Fn>
void conv_backward_weight(benchmark::State& st) {
  auto x = random_vec(kConv.batch * kConv.in_c * kConv.in_h * kConv.in_w, 1);
  auto g = random_vec(kConv.batch * kConv.out_c * kConv.out_h() * kConv.out_w(), 3);
  std::vector<double> gw(kConv.out_c * kConv.in_c * kConv.k * kConv.k);
  for (auto _ : st) {
    Fn(kConv, g.data(), x.data(), gw.data());
    benchmark::DoNotOptimize(gw.data());
  }
}

template <auto Fn>
void dense_forward(benchmark::State& st) {
  auto x = random_vec(kDense.batch * kDense.in, 1);
  auto w = random_vec(kDense.out * kDense.in, 2);
  std::vector<double> y(kDense.batch * kDense.out);
  for (auto _ : st) {
    Fn(kDense, x.data(), w.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

BENCHMARK(conv_forward<kernels::serial::conv_forward>)->Name("conv_forward/serial");
BENCHMARK(conv_forward<kernels::parallel::conv_forward>)->Name("conv_forward/parallel");
BENCHMARK(conv_backward_weight<kernels::serial::conv_backward_weight>)->Name("conv_backward_weight/serial");
BENCHMARK(conv_backward_weight<kernels::parallel::conv_backward_weight>)->Name("conv_backward_weight/parallel");
BENCHMARK(dense_forward<kernels::serial::dense_forward>)->Name("dense_forward/serial");
BENCHMARK(dense_forward<kernels::parallel::dense_forward>)->Name("dense_forward/parallel");

void cnn_eval(benchmark::State& st, gradcore::Mode mode) {
  const auto built = models::build(models::small_cnn_spec(10, 1));
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  auto feats = std::make_shared<Tensor>(Shape{n, 1, 28, 28}, random_vec(n * 784, 4));
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 10);
  const auto batch = gradcore::Batch::whole(feats, labels);
  const ParamVector v(built.graph.partition(), random_vec(built.params.size(), 5));
  for (auto _ : st) {
    auto ev = gradcore::evaluate(built.graph, built.params, batch, {}, mode, &v);
    benchmark::DoNotOptimize(ev.loss);
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * n));
}

BENCHMARK_CAPTURE(cnn_eval, gradient, gradcore::Mode::gradient)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cnn_eval, hvp, gradcore::Mode::hvp)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
