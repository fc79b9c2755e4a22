#include "kdda/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kdda/class_index.hpp"
#include "kdda/errors.hpp"
#include "kdda/rng.hpp"

namespace fs = std::filesystem;

namespace kdda {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

/// Next whitespace-delimited header token, skipping '#' comments that run
/// to end of line. Consumes the single delimiter after the token, which is
/// exactly what the P5 raster needs.
std::string next_token(std::istream& in) {
  std::string tok;
  int ch = in.get();
  for (;;) {
    if (ch == EOF) return tok;
    if (ch == '#') {
      while (ch != EOF && ch != '\n' && ch != '\r') ch = in.get();
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      ch = in.get();
    } else {
      break;
    }
  }
  while (ch != EOF && !std::isspace(static_cast<unsigned char>(ch)) &&
         ch != '#') {
    tok.push_back(static_cast<char>(ch));
    ch = in.get();
  }
  if (ch == '#') in.unget();
  return tok;
}

long parse_int_token(std::istream& in, const char* what) {
  const std::string tok = next_token(in);
  if (tok.empty()) throw IoError(std::string("missing ") + what);
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || value < 0) {
    throw IoError(std::string("malformed ") + what + " '" + tok + "'");
  }
  return value;
}

}  // namespace

PgmImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");

  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5") {
    throw IoError("unsupported magic '" + magic + "' (want P2 or P5)");
  }
  const long width = parse_int_token(in, "width");
  const long height = parse_int_token(in, "height");
  const long maxval = parse_int_token(in, "maxval");
  if (width < 1 || height < 1) throw IoError("nonpositive image dimensions");
  if (maxval < 1 || maxval > 65535) {
    throw IoError("maxval " + std::to_string(maxval) +
                  " outside the supported range 1..65535");
  }

  PgmImage image;
  image.width = static_cast<int>(width);
  image.height = static_cast<int>(height);
  image.maxval = static_cast<int>(maxval);
  const std::size_t count =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  image.pixels.reserve(count);

  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const long gray = parse_int_token(in, "pixel value");
      if (gray > maxval) {
        throw IoError("pixel value " + std::to_string(gray) +
                      " exceeds maxval " + std::to_string(maxval));
      }
      image.pixels.push_back(static_cast<double>(gray) /
                             static_cast<double>(maxval));
    }
  } else {
    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(count * bytes_per);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
      throw IoError("truncated pixel data");
    }
    for (std::size_t i = 0; i < count; ++i) {
      long gray;
      if (bytes_per == 2) {  // most significant byte first, per Netpbm
        gray = (static_cast<long>(raw[2 * i]) << 8) | raw[2 * i + 1];
      } else {
        gray = raw[i];
      }
      if (gray > maxval) {
        throw IoError("pixel value " + std::to_string(gray) +
                      " exceeds maxval " + std::to_string(maxval));
      }
      image.pixels.push_back(static_cast<double>(gray) /
                             static_cast<double>(maxval));
    }
  }
  return image;
}

void save_pgm_p2(const std::string& path, const PgmImage& image) {
  if (image.width < 1 || image.height < 1 || image.maxval < 1 ||
      image.maxval > 65535) {
    throw InvalidInput("image header fields out of range");
  }
  const std::size_t count = static_cast<std::size_t>(image.width) *
                            static_cast<std::size_t>(image.height);
  if (image.pixels.size() != count) {
    throw InvalidInput("pixel count does not match image dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "P2\n"
      << image.width << ' ' << image.height << '\n'
      << image.maxval << '\n';
  for (std::size_t i = 0; i < count; ++i) {
    long gray = std::lround(image.pixels[i] * image.maxval);
    gray = std::clamp(gray, 0L, static_cast<long>(image.maxval));
    out << gray << ((i + 1) % 16 == 0 || i + 1 == count ? '\n' : ' ');
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

Dataset load_image_dir(const std::string& path, int expected_width,
                       int expected_height) {
  const fs::path root(path);
  if (!fs::is_directory(root)) {
    throw IoError("'" + path + "' is not a directory");
  }

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  if (class_dirs.empty()) {
    throw InvalidInput("'" + path + "' contains no class subdirectories");
  }

  Dataset ds;
  ds.width = expected_width;
  ds.height = expected_height;
  int label = 0;
  for (const auto& dir : class_dirs) {
    ++label;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) {
                return a.filename().string() < b.filename().string();
              });
    if (files.empty()) {
      throw InvalidInput("class directory '" + dir.string() +
                         "' contains no .pgm images");
    }
    for (const auto& file : files) {
      PgmImage image;
      try {
        image = load_pgm(file.string());
      } catch (const Error& e) {
        throw IoError(file.string() + ": " + e.what());
      }
      if (image.width != expected_width || image.height != expected_height) {
        throw IoError(file.string() + ": size " + std::to_string(image.width) +
                      "x" + std::to_string(image.height) +
                      " does not match expected " +
                      std::to_string(expected_width) + "x" +
                      std::to_string(expected_height));
      }
      ds.samples.push_back(std::move(image.pixels));
      ds.labels.push_back(label);
      ds.names.push_back(dir.filename().string() + "/" +
                         file.filename().string());
    }
  }
  return ds;
}

std::pair<Dataset, Dataset> split_per_class(const Dataset& ds,
                                            const SplitSpec& spec) {
  if (spec.k_train < 1) throw InvalidConfig("k_train must be at least 1");
  const ClassIndex index = ClassIndex::from_labels(ds.labels);
  for (int c = 1; c <= index.num_classes(); ++c) {
    const std::size_t size = index.class_sizes()[static_cast<std::size_t>(c - 1)];
    if (spec.k_train >= size) {
      throw InvalidConfig("k_train " + std::to_string(spec.k_train) +
                          " must be smaller than class " + std::to_string(c) +
                          " size " + std::to_string(size));
    }
  }

  // The generator is mt19937_64 under the hood with rejection-sampled
  // bounded draws, so the same spec reproduces the same split anywhere.
  Rng rng(spec.seed + spec.repeat);
  std::vector<bool> in_train(ds.size(), false);
  for (int c = 1; c <= index.num_classes(); ++c) {
    std::vector<std::size_t> rows = index.members(c);
    for (std::size_t i = rows.size() - 1; i > 0; --i) {  // Fisher-Yates
      const std::size_t j = static_cast<std::size_t>(rng.bounded(i + 1));
      std::swap(rows[i], rows[j]);
    }
    for (std::size_t i = 0; i < spec.k_train; ++i) in_train[rows[i]] = true;
  }

  Dataset train, test;
  train.width = test.width = ds.width;
  train.height = test.height = ds.height;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Dataset& side = in_train[i] ? train : test;
    side.samples.push_back(ds.samples[i]);
    side.labels.push_back(ds.labels[i]);
    side.names.push_back(ds.names.empty() ? "" : ds.names[i]);
  }
  return {std::move(train), std::move(test)};
}

Dataset make_rings(int classes, int per_class, double noise,
                   std::uint64_t seed) {
  if (classes < 2) throw InvalidConfig("rings need at least 2 classes");
  if (per_class < 1) throw InvalidConfig("rings need at least 1 sample per class");
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw InvalidConfig("ring noise must be finite and nonnegative");
  }

  Dataset ds;
  Rng rng(seed);
  for (int c = 1; c <= classes; ++c) {
    for (int i = 0; i < per_class; ++i) {
      const double theta = kTwoPi * rng.uniform();
      const double radius = static_cast<double>(c) + noise * rng.gaussian();
      ds.samples.push_back({radius * std::cos(theta),
                            radius * std::sin(theta)});
      ds.labels.push_back(c);
      std::ostringstream name;
      name << "ring-" << c << "-" << i;
      ds.names.push_back(name.str());
    }
  }
  return ds;
}

}  // namespace kdda
