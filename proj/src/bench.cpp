#include "qmf/bench.hpp"

#include "qmf/image_io.hpp"
#include "qmf/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

namespace qmf {
namespace {

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 10; ++k) g.push_back(0.05 * k);
  return g;
}

int thread_budget(int requested, std::size_t jobs) {
  int budget = requested > 0
                   ? requested
                   : static_cast<int>(std::thread::hardware_concurrency());
  if (budget < 1) budget = 1;
  if (const char* cap = std::getenv("QMF_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && parsed >= 1 && parsed < 1024)
      budget = std::min(budget, static_cast<int>(parsed));
  }
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(budget), jobs));
}

double median_ms(std::vector<double>& samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? samples[n / 2]
                    : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

struct ImageTask {
  std::filesystem::path path;
  std::string name;
};

struct ImageOutcome {
  std::vector<RdPoint> points;
  std::vector<std::string> warnings;
};

ImageOutcome run_image(const ImageTask& task, const SweepOptions& options) {
  ImageOutcome out;
  RgbImage image;
  try {
    image = load_image(task.path);
    if (image.height < 11 || image.width < 11)
      throw std::runtime_error("image smaller than the ssim window");
  } catch (const std::exception& e) {
    out.warnings.push_back("skipping " + task.name + ": " + e.what());
    return out;
  }
  for (const auto& codec : options.codecs) {
    for (const double quality : options.qualities) {
      QmfConfig config = options.config;
      config.quality = quality;
      config.rank.reset();
      try {
        const auto encode = [&] {
          return codec == "qmf" ? qmf_encode(image, config)
                                : svd_encode(image, config);
        };
        const auto bytes = encode();
        const RgbImage decoded = decode_container(bytes);
        RdPoint point;
        point.image = task.name;
        point.codec = codec;
        point.quality = quality;
        point.bpp = compressed_bpp(bytes, image.height, image.width);
        point.psnr_db = psnr(image, decoded);
        point.ssim = ssim(image, decoded);
        std::vector<double> enc_ms, dec_ms;
        for (int rep = 0; rep < options.timing_reps; ++rep) {
          const auto t0 = std::chrono::steady_clock::now();
          const auto encoded = encode();
          const auto t1 = std::chrono::steady_clock::now();
          decode_container(encoded);
          const auto t2 = std::chrono::steady_clock::now();
          enc_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
          dec_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
        }
        point.encode_ms = median_ms(enc_ms);
        point.decode_ms = median_ms(dec_ms);
        out.points.push_back(std::move(point));
      } catch (const std::exception& e) {
        out.warnings.push_back("skipping " + task.name + " (" + codec + "): " +
                               e.what());
      }
    }
  }
  return out;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string block_name(const std::string& codec) {
  std::string out;
  for (const char c : codec)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

}  // namespace

RdCurve build_curve(const std::string& codec,
                    const std::vector<RdPoint>& points,
                    const std::vector<double>& grid) {
  // per-image samples ordered by bpp; map keys give a stable image order
  std::map<std::string, std::vector<const RdPoint*>> by_image;
  for (const auto& p : points)
    if (p.codec == codec) by_image[p.image].push_back(&p);
  for (auto& [name, samples] : by_image)
    std::sort(samples.begin(), samples.end(),
              [](const RdPoint* a, const RdPoint* b) { return a->bpp < b->bpp; });

  RdCurve curve;
  curve.codec = codec;
  for (const double g : grid) {
    std::vector<double> psnrs, ssims;
    for (const auto& [name, samples] : by_image) {
      if (samples.empty() || g < samples.front()->bpp ||
          g > samples.back()->bpp)
        continue;  // outside this image's sampled range: never extrapolate
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i]->bpp >= g) {
          if (samples[i]->bpp == g || i == 0) {
            psnrs.push_back(samples[i]->psnr_db);
            ssims.push_back(samples[i]->ssim);
          } else {
            const double b0 = samples[i - 1]->bpp;
            const double b1 = samples[i]->bpp;
            const double t = (g - b0) / (b1 - b0);
            psnrs.push_back(samples[i - 1]->psnr_db +
                            t * (samples[i]->psnr_db - samples[i - 1]->psnr_db));
            ssims.push_back(samples[i - 1]->ssim +
                            t * (samples[i]->ssim - samples[i - 1]->ssim));
          }
          break;
        }
      }
    }
    if (psnrs.empty()) continue;
    const auto stats = [](const std::vector<double>& xs) {
      const double n = static_cast<double>(xs.size());
      double mean = 0.0;
      for (const double x : xs) mean += x;
      mean /= n;
      double var = 0.0;
      if (xs.size() > 1) {
        for (const double x : xs) var += (x - mean) * (x - mean);
        var /= n - 1.0;
      }
      return std::pair<double, double>{mean, std::sqrt(var / n)};
    };
    RdCurvePoint point;
    point.bpp = g;
    std::tie(point.psnr_mean, point.psnr_se) = stats(psnrs);
    std::tie(point.ssim_mean, point.ssim_se) = stats(ssims);
    point.n_images = static_cast<int>(psnrs.size());
    curve.points.push_back(point);
  }
  return curve;
}

SweepResult rd_sweep(const std::filesystem::path& dataset,
                     const SweepOptions& options) {
  if (options.codecs.empty())
    throw std::invalid_argument("rd_sweep: no codecs selected");
  for (const auto& codec : options.codecs)
    if (codec != "qmf" && codec != "svd")
      throw std::invalid_argument("rd_sweep: unknown codec '" + codec + "'");
  if (options.qualities.empty())
    throw std::invalid_argument("rd_sweep: no qualities selected");
  if (options.timing_reps < 0)
    throw std::invalid_argument("rd_sweep: negative timing reps");
  if (!std::filesystem::is_directory(dataset))
    throw std::runtime_error("rd_sweep: dataset directory not found: " +
                             dataset.string());

  std::vector<ImageTask> tasks;
  for (const auto& entry : std::filesystem::directory_iterator(dataset)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".ppm")
      tasks.push_back({entry.path(), entry.path().filename().string()});
  }
  std::sort(tasks.begin(), tasks.end(),
            [](const ImageTask& a, const ImageTask& b) { return a.name < b.name; });
  if (tasks.empty())
    throw std::runtime_error("rd_sweep: no images in " + dataset.string());

  std::vector<ImageOutcome> outcomes(tasks.size());
  const int workers = thread_budget(options.threads, tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      outcomes[i] = run_image(tasks[i], options);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size();
             i = next.fetch_add(1))
          outcomes[i] = run_image(tasks[i], options);
      });
    }
    for (auto& thread : pool) thread.join();
  }

  SweepResult result;
  for (auto& outcome : outcomes) {
    for (auto& p : outcome.points) result.points.push_back(std::move(p));
    for (auto& w : outcome.warnings) result.warnings.push_back(std::move(w));
  }
  if (result.points.empty())
    throw std::runtime_error("rd_sweep: no image in " + dataset.string() +
                             " could be scored");
  const std::vector<double> grid =
      options.grid.empty() ? default_grid() : options.grid;
  for (const auto& codec : options.codecs)
    result.curves.push_back(build_curve(codec, result.points, grid));
  return result;
}

void write_points_csv(std::ostream& out, const std::vector<RdPoint>& points) {
  out << "image,codec,quality,bpp,psnr_db,ssim,encode_ms,decode_ms\n";
  for (const auto& p : points) {
    out << p.image << ',' << p.codec << ',' << format_double(p.quality) << ','
        << format_double(p.bpp) << ',' << format_double(p.psnr_db) << ','
        << format_double(p.ssim) << ',' << format_double(p.encode_ms) << ','
        << format_double(p.decode_ms) << '\n';
  }
}

void write_curves_csv(std::ostream& out, const std::vector<RdCurve>& curves) {
  out << "codec,bpp,psnr_mean,psnr_se,ssim_mean,ssim_se,n_images\n";
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      out << curve.codec << ',' << format_double(p.bpp) << ','
          << format_double(p.psnr_mean) << ',' << format_double(p.psnr_se)
          << ',' << format_double(p.ssim_mean) << ','
          << format_double(p.ssim_se) << ',' << p.n_images << '\n';
    }
  }
}

void write_gnuplot_script(std::ostream& out,
                          const std::vector<RdCurve>& curves) {
  out << "# rate-distortion curves; render with: gnuplot <script>\n"
      << "set terminal pngcairo size 960,640\n"
      << "set datafile separator whitespace\n"
      << "set key bottom right\n"
      << "set xlabel 'bits per pixel'\n"
      << "set grid\n";
  for (const auto& curve : curves) {
    out << "$" << block_name(curve.codec) << " << EOD\n";
    for (const auto& p : curve.points) {
      out << format_double(p.bpp) << ' ' << format_double(p.psnr_mean) << ' '
          << format_double(p.psnr_se) << ' ' << format_double(p.ssim_mean)
          << ' ' << format_double(p.ssim_se) << '\n';
    }
    out << "EOD\n";
  }
  out << "set output 'rd_psnr.png'\n"
      << "set ylabel 'psnr (db)'\n"
      << "plot";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    out << (i ? "," : "") << " $" << block_name(curves[i].codec)
        << " using 1:2:3 with yerrorlines title '" << curves[i].codec << "'";
  }
  out << "\nset output 'rd_ssim.png'\n"
      << "set ylabel 'ssim'\n"
      << "plot";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    out << (i ? "," : "") << " $" << block_name(curves[i].codec)
        << " using 1:4:5 with yerrorlines title '" << curves[i].codec << "'";
  }
  out << '\n';
}

}  // namespace qmf
