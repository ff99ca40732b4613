#include "fbsplit/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "fbsplit/errors.hpp"

namespace fbsplit {

namespace {

class PgmParser {
public:
    PgmParser(std::string data, std::string name)
        : data_(std::move(data)), name_(std::move(name)) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw IoError(name_ + ": " + what + " (byte offset " + std::to_string(pos_) + ")");
    }

    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long next_int(const char* what) {
        skip_space_and_comments();
        if (pos_ >= data_.size()) fail(std::string("unexpected end of file reading ") + what);
        if (!std::isdigit(static_cast<unsigned char>(data_[pos_])))
            fail(std::string("expected integer for ") + what);
        long v = 0;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
            v = v * 10 + (data_[pos_] - '0');
            if (v > 1'000'000'000L) fail(std::string("integer overflow in ") + what);
            ++pos_;
        }
        return v;
    }

    std::size_t pos() const { return pos_; }
    const std::string& data() const { return data_; }

    void advance(std::size_t n) { pos_ += n; }
    std::size_t remaining() const { return data_.size() - pos_; }
    char peek() const { return data_[pos_]; }

private:
    std::string data_;
    std::string name_;
    std::size_t pos_ = 0;
};

}  // namespace

Image load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_pgm: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    PgmParser p(buf.str(), path.string());

    if (p.remaining() < 2 || p.peek() != 'P') p.fail("not a PGM file (bad magic)");
    p.advance(1);
    const char kind = p.peek();
    if (kind != '2' && kind != '5') p.fail("unsupported PGM magic (want P2 or P5)");
    p.advance(1);

    const long width = p.next_int("width");
    const long height = p.next_int("height");
    if (width < 1 || height < 1) p.fail("dimensions must be positive");
    const long maxval = p.next_int("maxval");
    if (maxval < 1) p.fail("maxval must be positive");
    if (maxval > 255)
        throw IoError(path.string() + ": unsupported maxval " + std::to_string(maxval) +
                      " (only maxval <= 255 is supported)");

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    Vector pixels(count);
    if (kind == '2') {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = p.next_int("pixel");
            if (v > maxval) p.fail("pixel value exceeds maxval");
            pixels[i] = static_cast<double>(v) / static_cast<double>(maxval);
        }
    } else {
        // exactly one whitespace byte separates the header from the payload
        if (p.remaining() < 1) p.fail("unexpected end of file before P5 payload");
        p.advance(1);
        if (p.remaining() < count)
            throw IoError(path.string() + ": truncated P5 payload, missing " +
                          std::to_string(count - p.remaining()) + " bytes (byte offset " +
                          std::to_string(p.pos()) + ")");
        const auto* bytes = reinterpret_cast<const unsigned char*>(p.data().data() + p.pos());
        for (std::size_t i = 0; i < count; ++i) {
            if (bytes[i] > maxval) p.fail("pixel value exceeds maxval");
            pixels[i] = static_cast<double>(bytes[i]) / static_cast<double>(maxval);
        }
    }
    return Image(static_cast<std::size_t>(width), static_cast<std::size_t>(height),
                 std::move(pixels));
}

void save_pgm(const Image& img, const std::filesystem::path& path, bool ascii) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_pgm: cannot open " + path.string() + " for writing");
    out << (ascii ? "P2" : "P5") << "\n" << img.width << " " << img.height << "\n255\n";
    std::vector<std::uint8_t> q(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double v = std::clamp(img.pixels[i], 0.0, 1.0);
        q[i] = static_cast<std::uint8_t>(std::lround(255.0 * v));
    }
    if (ascii) {
        for (std::size_t r = 0; r < img.height; ++r) {
            for (std::size_t c = 0; c < img.width; ++c) {
                if (c) out << ' ';
                out << static_cast<int>(q[r * img.width + c]);
            }
            out << '\n';
        }
    } else {
        out.write(reinterpret_cast<const char*>(q.data()),
                  static_cast<std::streamsize>(q.size()));
    }
    if (!out) throw IoError("save_pgm: write failed for " + path.string());
}

}  // namespace fbsplit
