#include <png.h>

#include <cstring>

#include "vtex/error.hpp"
#include "vtex/frame_io.hpp"

namespace vtex {

Frame read_png(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    fail(ErrorCode::MissingInput, "no such file: " + path.string());
  }
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    fail(ErrorCode::DecodeFailure,
         "cannot decode " + path.string() + ": " + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, data.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    fail(ErrorCode::DecodeFailure, "cannot decode " + path.string() + ": " + msg);
  }
  return Frame(image.width, image.height, color ? 3u : 1u, std::move(data));
}

void write_png(const Frame& frame, const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = frame.width();
  image.height = frame.height();
  image.format = frame.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, frame.samples().data(),
                               0, nullptr)) {
    fail(ErrorCode::IoFailure,
         "cannot write " + path.string() + ": " + image.message);
  }
}

}  // namespace vtex
