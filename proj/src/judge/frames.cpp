#include "wmeval/judge/frames.hpp"

#include "wmeval/core/errors.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

namespace wmeval::judge {

namespace fs = std::filesystem;

std::vector<fs::path> list_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FrameError("frame directory not found: " + dir.string());
  static constexpr std::array<std::string_view, 4> kExt{".png", ".jpg", ".jpeg", ".bmp"};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (std::find(kExt.begin(), kExt.end(), ext) != kExt.end()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw FrameError("no image frames in " + dir.string());
  return files;
}

cv::Mat load_frame(const fs::path& path) {
  cv::Mat img = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (img.empty()) throw FrameError("cannot decode frame " + path.string());
  return img;
}

std::vector<cv::Mat> load_frames(const std::vector<fs::path>& files,
                                 const std::vector<int>& indices) {
  std::vector<cv::Mat> out;
  out.reserve(indices.size());
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= files.size()) {
      throw FrameError("frame index " + std::to_string(i) + " out of range");
    }
    out.push_back(load_frame(files[static_cast<std::size_t>(i)]));
  }
  return out;
}

namespace {

cv::Mat resized(const cv::Mat& img, cv::Size size) {
  if (img.size() == size) return img;
  cv::Mat out;
  cv::resize(img, out, size, 0, 0, cv::INTER_AREA);
  return out;
}

cv::Mat to_height(const cv::Mat& img, int height) {
  if (img.rows == height) return img;
  const int width = std::max(1, static_cast<int>(std::lround(
                                    static_cast<double>(img.cols) * height / img.rows)));
  return resized(img, {width, height});
}

}  // namespace

cv::Mat pairframe_composite(const cv::Mat& top, const cv::Mat& bottom) {
  cv::Mat out;
  cv::vconcat(resized(top, {kPairframeSide, kPairframeSide}),
              resized(bottom, {kPairframeSide, kPairframeSide}), out);
  return out;
}

cv::Mat tile_horizontal(const std::vector<cv::Mat>& frames) {
  if (frames.empty()) throw FrameError("nothing to tile");
  std::vector<cv::Mat> row;
  row.reserve(frames.size());
  for (const auto& f : frames) row.push_back(to_height(f, frames.front().rows));
  cv::Mat out;
  cv::hconcat(row, out);
  return out;
}

cv::Mat tile_grid(const std::vector<cv::Mat>& frames, int cols) {
  if (frames.empty()) throw FrameError("nothing to tile");
  if (cols < 1) throw FrameError("grid needs at least one column");
  const cv::Size cell = frames.front().size();
  const int rows = (static_cast<int>(frames.size()) + cols - 1) / cols;
  cv::Mat out(rows * cell.height, cols * cell.width, frames.front().type(), cv::Scalar::all(0));
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const int r = static_cast<int>(i) / cols;
    const int c = static_cast<int>(i) % cols;
    resized(frames[i], cell).copyTo(out(cv::Rect(c * cell.width, r * cell.height, cell.width,
                                                 cell.height)));
  }
  return out;
}

cv::Mat side_by_side(const cv::Mat& left, const cv::Mat& right) {
  cv::Mat out;
  cv::hconcat(left, to_height(right, left.rows), out);
  return out;
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string encode_png_base64(const cv::Mat& image) {
  std::vector<std::uint8_t> png;
  if (!cv::imencode(".png", image, png)) throw FrameError("PNG encoding failed");
  return base64_encode(png);
}

}  // namespace wmeval::judge
