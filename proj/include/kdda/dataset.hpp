#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace kdda {

/// A PGM image with pixel values already scaled to [0,1] by maxval.
/// Row-major: pixels[r * width + c].
struct PgmImage {
  std::vector<double> pixels;
  int width = 0;
  int height = 0;
  int maxval = 0;
};

/// In-memory sample collection. `width`/`height` are nonzero only for
/// image-derived data, in which case every sample has width*height entries.
struct Dataset {
  std::vector<std::vector<double>> samples;
  std::vector<int> labels;          // contiguous 1..C, every class nonempty
  std::vector<std::string> names;   // per-sample source names
  int width = 0;
  int height = 0;

  std::size_t size() const { return samples.size(); }
};

/// Per-class random split request. The effective RNG seed is
/// seed + repeat, so repeat r of an experiment gets its own stream.
struct SplitSpec {
  std::size_t k_train = 1;  // training samples taken from each class
  std::uint64_t seed = 0;
  std::uint64_t repeat = 0;
};

/// Parses a single PGM file, either P2 (ASCII) or P5 (binary). Header
/// comments (# ... end of line) are honored, maxval up to 65535 with
/// two-byte big-endian samples in P5 beyond 255.
PgmImage load_pgm(const std::string& path);

/// Writes an image back out in P2 form; pixel reals are scaled by maxval
/// and rounded, so a loaded P2 image round-trips exactly.
void save_pgm_p2(const std::string& path, const PgmImage& image);

/// Loads a directory-per-class image tree: every subdirectory of `path` is
/// one class (labeled 1..C in lexicographic order) and every *.pgm file
/// inside it one sample (lexicographic order within the class). Images
/// whose size differs from expected_width x expected_height are rejected;
/// nothing is resampled.
Dataset load_image_dir(const std::string& path, int expected_width,
                       int expected_height);

/// Deterministic per-class split: exactly k_train samples of each class go
/// to train, the remainder to test, chosen by Fisher-Yates shuffle of the
/// class's sample indices under seed + repeat. Relative sample order from
/// `ds` is preserved on both sides.
std::pair<Dataset, Dataset> split_per_class(const Dataset& ds,
                                            const SplitSpec& spec);

/// Synthetic concentric-rings generator: class c lies on the circle of
/// radius c with Gaussian radial noise. Linearly inseparable by design.
Dataset make_rings(int classes, int per_class, double noise,
                   std::uint64_t seed);

}  // namespace kdda
