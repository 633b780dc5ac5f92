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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>
#include <vector>

#include "fasthog/bench.hpp"
#include "fasthog/descriptor.hpp"
#include "fasthog/detector.hpp"
#include "fasthog/error.hpp"
#include "fasthog/gradient.hpp"
#include "fasthog/image_io.hpp"
#include "fasthog/integral.hpp"
#include "fasthog/selfcheck.hpp"

namespace py = pybind11;
using namespace fasthog;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

// (H, W) or (H, W, 3) uint8 array -> planar Image.
Image image_from_array(const U8Array& a) {
  if (a.ndim() != 2 && !(a.ndim() == 3 && (a.shape(2) == 3 || a.shape(2) == 1))) {
    throw Error(Errc::InvalidArgument, "image must have shape (H, W) or (H, W, 3)");
  }
  const int h = static_cast<int>(a.shape(0));
  const int w = static_cast<int>(a.shape(1));
  const int c = a.ndim() == 2 ? 1 : static_cast<int>(a.shape(2));
  Image image(w, h, c);
  const std::uint8_t* src = a.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int k = 0; k < c; ++k) image.at(k, x, y) = src[(static_cast<std::size_t>(y) * w + x) * c + k];
    }
  }
  return image;
}

U8Array array_from_image(const Image& image) {
  const auto h = static_cast<py::ssize_t>(image.height());
  const auto w = static_cast<py::ssize_t>(image.width());
  const int c = image.channels();
  U8Array out = c == 1 ? U8Array({h, w}) : U8Array({h, w, static_cast<py::ssize_t>(c)});
  std::uint8_t* dst = out.mutable_data();
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int k = 0; k < c; ++k) dst[(static_cast<std::size_t>(y) * w + x) * c + k] = image.at(k, x, y);
    }
  }
  return out;
}

BinMap binmap_from_array(const U8Array& a, int bins) {
  if (a.ndim() != 2) throw Error(Errc::InvalidArgument, "bin map must have shape (H, W)");
  std::vector<BinIndex> cells(a.data(), a.data() + a.size());
  return BinMap(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), bins,
                std::move(cells));
}

U8Array array_from_binmap(const BinMap& map) {
  U8Array out({static_cast<py::ssize_t>(map.height()), static_cast<py::ssize_t>(map.width())});
  std::memcpy(out.mutable_data(), map.cells().data(), map.cells().size());
  return out;
}

Rect to_rect(const std::tuple<int, int, int, int>& t) {
  return {std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t)};
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
  return out;
}

}  // namespace

PYBIND11_MODULE(_fasthog, m) {
  m.doc() = "Fast HOG descriptors via orientation lookup tables and integral images";

  static py::exception<Error> error_type(m, "FastHogError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, e.what());
    }
  });

  m.attr("NO_BIN") = py::int_(kNoBin);

  // image_io
  m.def("decode_pnm", [](py::bytes data) {
    const std::string s = data;
    return array_from_image(
        decode_pnm({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}));
  }, py::arg("data"), "Decode P2/P3/P5/P6 bytes to an (H, W) or (H, W, 3) uint8 array.");
  m.def("encode_pgm", [](const U8Array& plane) {
    const auto bytes = encode_pgm(image_from_array(plane));
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }, py::arg("plane"));

  // gradient
  m.def("bin_of", [](int dx, int dy, int bins) -> py::object {
    if (dx < -kMaxDelta || dx > kMaxDelta || dy < -kMaxDelta || dy > kMaxDelta) {
      throw Error(Errc::InvalidArgument, "dx and dy must be in [-255, 255]");
    }
    const BinIndex b = bin_of(dx, dy, bins);
    if (b == kNoBin) return py::none();
    return py::int_(b);
  }, py::arg("dx"), py::arg("dy"), py::arg("bins"), "Bin index, or None for a zero gradient.");

  py::class_<OrientationLut>(m, "OrientationLut")
      .def_static("build", &OrientationLut::build, py::arg("bins"))
      .def_property_readonly("bins", &OrientationLut::bins)
      .def("lookup", &OrientationLut::lookup, py::arg("dx"), py::arg("dy"))
      .def("table", [](const OrientationLut& lut) {
        U8Array out({static_cast<py::ssize_t>(kLutSide), static_cast<py::ssize_t>(kLutSide)});
        std::memcpy(out.mutable_data(), lut.table().data(), lut.table().size());
        return out;
      });

  m.def("gradient_map", [](const U8Array& image, int bins, int threads) {
    const auto lut = OrientationLut::build(bins);
    return array_from_binmap(gradient_map(image_from_array(image), lut, threads));
  }, py::arg("image"), py::arg("bins") = 9, py::arg("threads") = 1);

  // integral
  py::class_<IntegralStack>(m, "IntegralStack")
      .def_property_readonly("width", &IntegralStack::width)
      .def_property_readonly("height", &IntegralStack::height)
      .def_property_readonly("bins", &IntegralStack::bins)
      .def_property_readonly("acc_bits",
                             [](const IntegralStack& s) { return static_cast<int>(s.acc_width()); })
      .def("value", &IntegralStack::value, py::arg("bin"), py::arg("x"), py::arg("y"))
      .def("rect_count", [](const IntegralStack& s, int bin, std::tuple<int, int, int, int> r) {
        return rect_count(s, bin, to_rect(r));
      }, py::arg("bin"), py::arg("rect"))
      .def("rect_histogram", [](const IntegralStack& s, std::tuple<int, int, int, int> r) {
        return rect_histogram(s, to_rect(r)).counts;
      }, py::arg("rect"), "Bin counts of the half-open rect (x0, y0, x1, y1).");

  m.def("build_integral_stack", [](const U8Array& bin_map, int bins, int acc_bits) {
    return build_integral_stack(binmap_from_array(bin_map, bins), acc_width_from_bits(acc_bits));
  }, py::arg("bin_map"), py::arg("bins"), py::arg("acc_bits") = 32);

  m.def("naive_histogram", [](const U8Array& bin_map, int bins, std::tuple<int, int, int, int> r) {
    return naive_histogram(binmap_from_array(bin_map, bins), to_rect(r)).counts;
  }, py::arg("bin_map"), py::arg("bins"), py::arg("rect"));

  // descriptor
  py::class_<DescriptorGeometry>(m, "DescriptorGeometry")
      .def(py::init([](int window_w, int window_h, int cell, int block, int block_stride,
                       int bins, const std::string& normalization) {
             DescriptorGeometry g{window_w, window_h, cell, block, block_stride, bins,
                                  parse_normalization(normalization)};
             g.validate();
             return g;
           }),
           py::arg("window_w") = 64, py::arg("window_h") = 128, py::arg("cell") = 8,
           py::arg("block") = 2, py::arg("block_stride") = 1, py::arg("bins") = 9,
           py::arg("normalization") = "none")
      .def_readonly("window_w", &DescriptorGeometry::window_w)
      .def_readonly("window_h", &DescriptorGeometry::window_h)
      .def_readonly("cell", &DescriptorGeometry::cell)
      .def_readonly("block", &DescriptorGeometry::block)
      .def_readonly("block_stride", &DescriptorGeometry::block_stride)
      .def_readonly("bins", &DescriptorGeometry::bins)
      .def_property_readonly("normalization", [](const DescriptorGeometry& g) {
        return std::string(normalization_name(g.normalization));
      })
      .def("__len__", [](const DescriptorGeometry& g) { return descriptor_length(g); });

  m.def("descriptor_length", &descriptor_length, py::arg("geometry"));
  m.def("window_descriptor", [](const IntegralStack& s, std::pair<int, int> origin,
                                const DescriptorGeometry& g) {
    return to_array(window_descriptor(s, {origin.first, origin.second}, g));
  }, py::arg("stack"), py::arg("origin"), py::arg("geometry"));
  m.def("naive_window_descriptor", [](const U8Array& bin_map, std::pair<int, int> origin,
                                      const DescriptorGeometry& g) {
    return to_array(
        naive_window_descriptor(binmap_from_array(bin_map, g.bins), {origin.first, origin.second}, g));
  }, py::arg("bin_map"), py::arg("origin"), py::arg("geometry"));

  // detector
  py::class_<LinearModel>(m, "LinearModel")
      .def(py::init([](const DescriptorGeometry& g, std::vector<double> weights, double bias) {
             if (weights.size() != descriptor_length(g)) {
               throw Error(Errc::LengthMismatch, "weights do not match the geometry");
             }
             return LinearModel{g, std::move(weights), bias};
           }),
           py::arg("geometry"), py::arg("weights"), py::arg("bias") = 0.0)
      .def_readonly("geometry", &LinearModel::geometry)
      .def_readonly("weights", &LinearModel::weights)
      .def_readonly("bias", &LinearModel::bias);
  m.def("load_model", [](const std::string& text) { return load_model(text); }, py::arg("text"));
  m.def("format_model", &format_model, py::arg("model"));
  m.def("score_window", [](const LinearModel& model, std::vector<double> d) {
    return score_window(model, d);
  }, py::arg("model"), py::arg("descriptor"));

  py::class_<Detection>(m, "Detection")
      .def_readonly("x", &Detection::x)
      .def_readonly("y", &Detection::y)
      .def_readonly("w", &Detection::w)
      .def_readonly("h", &Detection::h)
      .def_readonly("score", &Detection::score)
      .def_readonly("scale", &Detection::scale)
      .def("__repr__", [](const Detection& d) {
        return "Detection(x=" + std::to_string(d.x) + ", y=" + std::to_string(d.y) +
               ", w=" + std::to_string(d.w) + ", h=" + std::to_string(d.h) +
               ", score=" + std::to_string(d.score) + ", scale=" + std::to_string(d.scale) + ")";
      });

  m.def("scan", [](const IntegralStack& s, const LinearModel& model, int stride, double threshold,
                   int threads, bool use_cache) {
    return scan(s, model, stride, threshold, {.threads = threads, .use_cache = use_cache});
  }, py::arg("stack"), py::arg("model"), py::arg("stride") = 8, py::arg("threshold") = 0.0,
     py::arg("threads") = 1, py::arg("use_cache") = true);
  m.def("pyramid_scan", [](const U8Array& image, const LinearModel& model, double scale_step,
                           int stride, double threshold, int threads) {
    return pyramid_scan(image_from_array(image), model, scale_step, stride, threshold,
                        {.threads = threads});
  }, py::arg("image"), py::arg("model"), py::arg("scale_step") = 1.2, py::arg("stride") = 8,
     py::arg("threshold") = 0.0, py::arg("threads") = 1);
  m.def("iou", [](std::tuple<int, int, int, int> a, std::tuple<int, int, int, int> b) {
    return iou({std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)},
               {std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b)});
  }, py::arg("a"), py::arg("b"), "IoU of two (x, y, w, h) boxes.");
  m.def("nms", &nms, py::arg("detections"), py::arg("iou_threshold") = 0.5);

  // bench / selfcheck
  m.def("bench", [](const U8Array& image, const DescriptorGeometry& g, int stride, int repeats,
                    int acc_bits) {
    const auto r = bench(image_from_array(image), g, stride, repeats, acc_width_from_bits(acc_bits));
    py::dict d;
    d["width"] = r.width;
    d["height"] = r.height;
    d["bins"] = r.geometry.bins;
    d["windows"] = r.windows;
    d["repeats"] = r.repeats;
    d["naive_ns"] = r.naive_ns;
    d["integral_ns"] = r.integral_ns;
    d["stack_build_ns"] = r.stack_build_ns;
    d["speedup"] = r.speedup;
    return d;
  }, py::arg("image"), py::arg("geometry"), py::arg("stride") = 1, py::arg("repeats") = 5,
     py::arg("acc_bits") = 32);
  m.def("selfcheck", [](int bins, int trials, std::uint64_t seed) {
    const auto r = selfcheck({bins, trials, seed});
    return py::make_tuple(r.passed(), r.checks);
  }, py::arg("bins") = 9, py::arg("trials") = 20, py::arg("seed") = 1);
}
