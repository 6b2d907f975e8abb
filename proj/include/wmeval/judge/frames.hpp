#pragma once

#include <opencv2/core.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace wmeval::judge {

inline constexpr int kPairframeSide = 448;

/// Image files (png, jpg, jpeg, bmp) in a directory, sorted by file name.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

cv::Mat load_frame(const std::filesystem::path& path);

std::vector<cv::Mat> load_frames(const std::vector<std::filesystem::path>& files,
                                 const std::vector<int>& indices);

/// Two frames resized to 448x448, first on top.
cv::Mat pairframe_composite(const cv::Mat& top, const cv::Mat& bottom);

/// Frames left to right at the first frame's height.
cv::Mat tile_horizontal(const std::vector<cv::Mat>& frames);

/// Row-major grid with `cols` columns, each cell the size of the first frame.
cv::Mat tile_grid(const std::vector<cv::Mat>& frames, int cols);

/// Baseline on the left, perturbed on the right.
cv::Mat side_by_side(const cv::Mat& left, const cv::Mat& right);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::string encode_png_base64(const cv::Mat& image);

}  // namespace wmeval::judge
