#include "CLI11.hpp"

#include "qmf/bench.hpp"
#include "qmf/image_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

struct EncodeArgs {
  std::string input;
  std::string output;
  std::string codec = "qmf";
  double quality = 0.1;
  int rank = 0;
  bool rank_set = false;
  std::vector<int> bounds = {-16, 15};
  int iterations = 10;
  int patch = 8;

  qmf::QmfConfig config() const {
    qmf::QmfConfig out;
    out.bounds = qmf::Bounds(bounds[0], bounds[1]);
    out.iterations = iterations;
    out.patch = patch;
    if (rank_set) {
      out.quality.reset();
      out.rank = rank;
    } else {
      out.quality = quality;
    }
    out.validate();
    return out;
  }
};

struct BenchArgs {
  std::string dataset;
  std::string out_csv;
  std::string points_csv;
  std::string plot;
  qmf::SweepOptions options;
  std::vector<int> bounds = {-16, 15};
};

int run_encode(const EncodeArgs& args, const qmf::QmfConfig& config) {
  const qmf::RgbImage image = qmf::load_image(args.input);
  qmf::EncodeInfo info;
  const auto bytes = args.codec == "svd" ? qmf::svd_encode(image, config, &info)
                                         : qmf::qmf_encode(image, config, &info);
  write_file(args.output, bytes);
  std::printf("encoded %dx%d -> %s: %zu bytes, %.6f bpp, ranks y=%d cb=%d cr=%d (%s)\n",
              image.width, image.height, args.output.c_str(),
              info.container_bytes, info.bpp, info.ranks[0], info.ranks[1],
              info.ranks[2], args.codec.c_str());
  return 0;
}

int run_decode(const std::string& input, const std::string& output) {
  const auto bytes = read_file(input);
  const qmf::RgbImage image = qmf::decode_container(bytes);
  qmf::save_image(image, output);
  std::printf("decoded %s -> %s (%dx%d)\n", input.c_str(), output.c_str(),
              image.width, image.height);
  return 0;
}

int run_info(const std::string& input) {
  const auto bytes = read_file(input);
  const qmf::ContainerInfo info = qmf::inspect(bytes);
  const bool is_qmf = info.format == qmf::ContainerFormat::qmf;
  std::printf("format: %s\n", is_qmf ? "qmf" : "svd");
  std::printf("dimensions: %dx%d\n", info.meta.width, info.meta.height);
  std::printf("patch: %d\n", info.meta.patch);
  if (is_qmf)
    std::printf("bounds: [%d, %d]\n", info.meta.bounds.alpha,
                info.meta.bounds.beta);
  static const char* names[3] = {"y", "cb", "cr"};
  for (int c = 0; c < 3; ++c) {
    const auto& comp = info.components[c];
    std::uint64_t u_bytes = 0, v_bytes = 0;
    for (const auto b : comp.u_stream_bytes) u_bytes += b;
    for (const auto b : comp.v_stream_bytes) v_bytes += b;
    std::printf("component %s: rank %d, u %lldx%d, v %lldx%d, compressed %llu bytes (u %llu, v %llu)\n",
                names[c], comp.rank, static_cast<long long>(comp.m), comp.rank,
                static_cast<long long>(comp.n), comp.rank,
                static_cast<unsigned long long>(u_bytes + v_bytes),
                static_cast<unsigned long long>(u_bytes),
                static_cast<unsigned long long>(v_bytes));
    if (!is_qmf)
      std::printf("component %s quantization: u scale %.9g zero %.9g, v scale %.9g zero %.9g\n",
                  names[c], comp.u_scale, comp.u_zero_point, comp.v_scale,
                  comp.v_zero_point);
  }
  std::printf("total: %zu bytes, %.6f bpp\n", info.total_bytes,
              qmf::compressed_bpp(bytes, info.meta.height, info.meta.width));
  return 0;
}

int run_bench(const BenchArgs& args) {
  const qmf::SweepResult result = qmf::rd_sweep(args.dataset, args.options);
  for (const auto& warning : result.warnings)
    std::cerr << "warning: " << warning << '\n';

  std::filesystem::path points_path = args.points_csv;
  if (points_path.empty()) {
    points_path = args.out_csv;
    points_path.replace_filename(points_path.stem().string() + "_points" +
                                 points_path.extension().string());
  }
  std::ofstream points_out(points_path);
  if (!points_out)
    throw std::runtime_error("cannot open " + points_path.string());
  qmf::write_points_csv(points_out, result.points);

  std::ofstream curves_out(args.out_csv);
  if (!curves_out) throw std::runtime_error("cannot open " + args.out_csv);
  qmf::write_curves_csv(curves_out, result.curves);

  if (!args.plot.empty()) {
    std::ofstream plot_out(args.plot);
    if (!plot_out) throw std::runtime_error("cannot open " + args.plot);
    qmf::write_gnuplot_script(plot_out, result.curves);
  }
  std::size_t curve_rows = 0;
  for (const auto& curve : result.curves) curve_rows += curve.points.size();
  std::printf("bench: %zu raw points -> %s, %zu curve rows -> %s\n",
              result.points.size(), points_path.string().c_str(), curve_rows,
              args.out_csv.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded integer matrix factorization image codec"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "compress an image");
  encode->add_option("input", enc.input, "input image (png or ppm)")
      ->required();
  encode->add_option("output", enc.output, "output container path")->required();
  auto* quality_opt =
      encode->add_option("--quality", enc.quality, "rank fraction in [0, 1]")
          ->check(CLI::Range(0.0, 1.0));
  auto* rank_opt = encode->add_option("--rank", enc.rank, "explicit rank")
                       ->check(CLI::PositiveNumber);
  quality_opt->excludes(rank_opt);
  rank_opt->excludes(quality_opt);
  encode->add_option("--bounds", enc.bounds, "factor bounds alpha,beta")
      ->delimiter(',')
      ->expected(2);
  encode->add_option("--iterations", enc.iterations, "descent sweeps")
      ->check(CLI::NonNegativeNumber);
  encode->add_option("--patch", enc.patch, "patch size")
      ->check(CLI::Range(1, 255));
  encode->add_option("--codec", enc.codec, "qmf or svd")
      ->check(CLI::IsMember({"qmf", "svd"}));

  std::string dec_input, dec_output;
  auto* decode = app.add_subcommand("decode", "decompress a container");
  decode->add_option("input", dec_input, "input container")->required();
  decode->add_option("output", dec_output, "output image (png or ppm)")
      ->required();

  std::string info_input;
  auto* info = app.add_subcommand("info", "describe a container");
  info->add_option("input", info_input, "container path")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "rate-distortion sweep");
  bench_cmd->add_option("--dataset", bench.dataset, "directory of images")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--out", bench.out_csv, "aggregated curve csv path")
      ->required();
  bench_cmd->add_option("--points-out", bench.points_csv,
                        "raw per-encode csv path (default: <out>_points)");
  bench_cmd->add_option("--plot", bench.plot, "gnuplot script path");
  bench_cmd->add_option("--codecs", bench.options.codecs, "codecs to sweep")
      ->delimiter(',');
  bench_cmd
      ->add_option("--qualities", bench.options.qualities, "quality ladder")
      ->delimiter(',');
  bench_cmd->add_option("--grid", bench.options.grid, "bpp grid")
      ->delimiter(',');
  bench_cmd->add_option("--bounds", bench.bounds, "factor bounds alpha,beta")
      ->delimiter(',')
      ->expected(2);
  bench_cmd
      ->add_option("--iterations", bench.options.config.iterations,
                   "descent sweeps")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--patch", bench.options.config.patch, "patch size")
      ->check(CLI::Range(1, 255));
  bench_cmd->add_option("--threads", bench.options.threads, "worker threads")
      ->check(CLI::NonNegativeNumber);
  bench_cmd
      ->add_option("--timing-reps", bench.options.timing_reps,
                   "timing repetitions per point, 0 disables")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // flag-level validation that cli11 checks cannot express
  qmf::QmfConfig enc_config;
  try {
    if (encode->parsed()) {
      enc.rank_set = rank_opt->count() > 0;
      enc_config = enc.config();
    }
    if (bench_cmd->parsed())
      bench.options.config.bounds = qmf::Bounds(bench.bounds[0], bench.bounds[1]);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (encode->parsed()) return run_encode(enc, enc_config);
    if (decode->parsed()) return run_decode(dec_input, dec_output);
    if (info->parsed()) return run_info(info_input);
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
