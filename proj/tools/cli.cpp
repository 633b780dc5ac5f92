// Copyright 2026 The fasthog Authors
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

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "fasthog/bench.hpp"
#include "fasthog/descriptor.hpp"
#include "fasthog/detector.hpp"
#include "fasthog/error.hpp"
#include "fasthog/gradient.hpp"
#include "fasthog/image_io.hpp"
#include "fasthog/integral.hpp"
#include "fasthog/selfcheck.hpp"

namespace fasthog::cli {

namespace {

struct GeometryFlags {
  int bins = 9;
  int cell = 8;
  int block = 2;
  int block_stride = 1;
  std::string window = "64x128";
  std::string norm = "none";

  void add_to(CLI::App& app) {
    app.add_option("--bins", bins, "orientation bins")->capture_default_str();
    app.add_option("--cell", cell, "cell side in pixels")->capture_default_str();
    app.add_option("--block", block, "block side in cells")->capture_default_str();
    app.add_option("--block-stride", block_stride, "block stride in cells")->capture_default_str();
    app.add_option("--window", window, "window size WxH")->capture_default_str();
    app.add_option("--norm", norm, "block normalization")
        ->check(CLI::IsMember({"none", "l1", "l2"}, CLI::ignore_case))
        ->capture_default_str();
  }

  DescriptorGeometry geometry() const {
    DescriptorGeometry g;
    const auto x = window.find_first_of("xX");
    if (x == std::string::npos) throw Error(Errc::InvalidArgument, "window must be WxH");
    auto parse = [&](std::string_view s) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(Errc::InvalidArgument, "window must be WxH, got '" + window + "'");
      }
      return v;
    };
    g.window_w = parse(std::string_view(window).substr(0, x));
    g.window_h = parse(std::string_view(window).substr(x + 1));
    g.cell = cell;
    g.block = block;
    g.block_stride = block_stride;
    g.bins = bins;
    g.normalization = parse_normalization(norm);
    g.validate();
    return g;
  }
};

// Shortest representation that reads back to the same double.
void put_real(std::ostream& os, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, ptr - buf);
}

std::string fixed_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(Errc::InvalidArgument, "cannot write " + path);
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void draw_boxes(Image& rgb, const std::vector<Detection>& dets) {
  auto set = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= rgb.width() || y >= rgb.height()) return;
    for (int c = 0; c < rgb.channels(); ++c) rgb.at(c, x, y) = 255;
  };
  for (const auto& d : dets) {
    for (int x = d.x; x < d.x + d.w; ++x) {
      set(x, d.y);
      set(x, d.y + d.h - 1);
    }
    for (int y = d.y; y < d.y + d.h; ++y) {
      set(d.x, y);
      set(d.x + d.w - 1, y);
    }
  }
}

Image to_rgb(const Image& image) {
  if (image.channels() == 3) return image;
  Image rgb(image.width(), image.height(), 3);
  for (int c = 0; c < 3; ++c) {
    auto src = image.plane(0);
    std::copy(src.begin(), src.end(), rgb.plane(c).begin());
  }
  return rgb;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fast HOG descriptors from orientation lookup tables and integral images"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  int threads = 1;

  // extract
  auto* extract = app.add_subcommand("extract", "dump descriptors of every window");
  std::string ex_image;
  std::string ex_out;
  int ex_stride = 8;
  GeometryFlags ex_geo;
  extract->add_option("--image", ex_image, "input PGM/PPM")->required();
  extract->add_option("--stride", ex_stride, "scan stride in pixels")->capture_default_str();
  extract->add_option("--out", ex_out, "output file (default stdout)");
  extract->add_option("--threads", threads, "worker threads")->capture_default_str();
  ex_geo.add_to(*extract);

  // detect
  auto* detect = app.add_subcommand("detect", "score windows with a linear model");
  std::string de_image;
  std::string de_model;
  std::string de_out;
  std::string de_annotate;
  int de_stride = 8;
  double de_threshold = 0.0;
  bool de_pyramid = false;
  double de_scale_step = 1.2;
  double de_nms_iou = 0.5;
  detect->add_option("--image", de_image, "input PGM/PPM")->required();
  detect->add_option("--model", de_model, "model file")->required();
  detect->add_option("--stride", de_stride, "scan stride in pixels")->capture_default_str();
  detect->add_option("--threshold", de_threshold, "minimum score (exclusive)")
      ->capture_default_str();
  detect->add_flag("--pyramid", de_pyramid, "scan an image pyramid");
  detect->add_option("--scale-step", de_scale_step, "pyramid scale factor")->capture_default_str();
  detect->add_option("--nms-iou", de_nms_iou, "suppression IoU threshold")->capture_default_str();
  detect->add_option("--annotate", de_annotate, "write the image with boxes as PPM");
  detect->add_option("--out", de_out, "output file (default stdout)");
  detect->add_option("--threads", threads, "worker threads")->capture_default_str();
  detect->add_option("--seed", seed, "random seed")->capture_default_str();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "time naive vs integral descriptors");
  std::string be_image;
  int be_stride = 1;
  int be_repeats = 5;
  int be_acc = 32;
  bool be_csv = false;
  GeometryFlags be_geo;
  bench_cmd->add_option("--image", be_image, "input PGM/PPM")->required();
  bench_cmd->add_option("--stride", be_stride, "scan stride in pixels")->capture_default_str();
  bench_cmd->add_option("--repeats", be_repeats, "timed repetitions")->capture_default_str();
  bench_cmd->add_flag("--csv", be_csv, "also print a CSV header and row");
  bench_cmd->add_option("--acc", be_acc, "integral accumulator bits")
      ->check(CLI::IsMember({16, 32}))
      ->capture_default_str();
  bench_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  be_geo.add_to(*bench_cmd);

  // selfcheck
  auto* check = app.add_subcommand("selfcheck", "verify fast paths against their oracles");
  SelfCheckOptions sc;
  check->add_option("--bins", sc.bins, "orientation bins")->capture_default_str();
  check->add_option("--trials", sc.trials, "random trials")->capture_default_str();
  check->add_option("--seed", sc.seed, "random seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (extract->parsed()) {
      const auto g = ex_geo.geometry();
      if (ex_stride < 1) throw Error(Errc::InvalidArgument, "stride must be >= 1");
      const Image image = read_pnm_file(ex_image);
      const auto lut = OrientationLut::build(g.bins);
      const auto stack = build_integral_stack(gradient_map(image, lut, threads));
      Output sink(ex_out, out);
      auto& os = sink.stream();
      const int cols = window_positions(image.width(), g.window_w, ex_stride);
      const int rows = window_positions(image.height(), g.window_h, ex_stride);
      if (cols == 0 || rows == 0) throw Error(Errc::WindowLargerThanImage, "window does not fit");
      const CellHistogramCache cache(stack, g, ex_stride, threads);
      std::vector<double> d(descriptor_length(g));
      for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < cols; ++i) {
          const Point origin{i * ex_stride, j * ex_stride};
          cache.descriptor_into(origin, d);
          os << origin.x << ' ' << origin.y;
          for (double v : d) {
            os << ' ';
            if (g.normalization == Normalization::None) {
              os << static_cast<long>(v);
            } else {
              put_real(os, v);
            }
          }
          os << '\n';
        }
      }
    } else if (detect->parsed()) {
      if (de_stride < 1) throw Error(Errc::InvalidArgument, "stride must be >= 1");
      const Image image = read_pnm_file(de_image);
      const LinearModel model = load_model_file(de_model);
      const ScanOptions opts{.threads = threads, .use_cache = true};
      std::vector<Detection> dets;
      if (de_pyramid) {
        dets = pyramid_scan(image, model, de_scale_step, de_stride, de_threshold, opts);
      } else {
        const auto lut = OrientationLut::build(model.geometry.bins);
        if (model.geometry.window_w > image.width() || model.geometry.window_h > image.height()) {
          throw Error(Errc::WindowLargerThanImage, "window does not fit the image");
        }
        const auto stack = build_integral_stack(gradient_map(image, lut, threads));
        dets = scan(stack, model, de_stride, de_threshold, opts);
      }
      dets = nms(std::move(dets), de_nms_iou);
      Output sink(de_out, out);
      for (const auto& d : dets) {
        sink.stream() << d.x << ' ' << d.y << ' ' << d.w << ' ' << d.h << ' '
                      << fixed_digits(d.score) << ' ' << fixed_digits(d.scale) << '\n';
      }
      if (!de_annotate.empty()) {
        Image rgb = to_rgb(image);
        draw_boxes(rgb, dets);
        write_file(de_annotate, encode_ppm(rgb));
      }
    } else if (bench_cmd->parsed()) {
      const auto g = be_geo.geometry();
      const Image image = read_pnm_file(be_image);
      const auto report = bench(image, g, be_stride, be_repeats, acc_width_from_bits(be_acc));
      out << format_report(report);
      if (be_csv) out << csv_header() << "\n" << csv_row(report) << "\n";
    } else if (check->parsed()) {
      const auto result = selfcheck(sc);
      for (const auto& [name, ok] : result.checks) {
        out << (ok ? "PASS " : "FAIL ") << name << "\n";
      }
      if (!result.passed()) {
        err << "selfcheck failed\n";
        return kExitProcessing;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitProcessing;
  }
  return kExitOk;
}

}  // namespace fasthog::cli
