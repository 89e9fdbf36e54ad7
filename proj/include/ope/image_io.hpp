#pragma once

// Image file IO: binary PPM (P6, 8-bit) and PNG (8-bit RGB or gray).

#include <stdexcept>
#include <string>

#include "ope/image.hpp"

namespace ope {

class ImageIoError : public std::runtime_error {
  public:
    enum class Kind { UnsupportedFormat, MalformedHeader, TruncatedPayload };

    ImageIoError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

// Format detected from content (PPM "P6" magic or PNG signature); values
// mapped v/255 on load. PNG palette/alpha/16-bit inputs are normalized to
// 8-bit RGB or gray.
Image load_image(const std::string& path);

// Format chosen by extension (".png" writes PNG, anything else PPM P6);
// values stored as round(v*255) after clamping. Gray images (1 channel) and
// RGB (3 channels) are supported.
void save_image(const Image& img, const std::string& path);

}  // namespace ope
