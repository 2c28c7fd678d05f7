#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "qfdensity/qf_sieve.hpp"

namespace qfd {

namespace {

template <class UInt>
void put_le(std::ostream& out, UInt v) {
    std::array<char, sizeof(UInt)> bytes{};
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(bytes.data(), bytes.size());
}

template <class UInt>
UInt get_le(std::istream& in) {
    std::array<unsigned char, sizeof(UInt)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) throw std::runtime_error("rep table: truncated header");
    UInt v = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(bytes[i]) << (8 * i);
    return v;
}

}  // namespace

void write_rep_table(std::ostream& out, const RepTable& table) {
    out.write(kRepTableMagic, sizeof kRepTableMagic);
    put_le<std::uint16_t>(out, kRepTableVersion);
    put_le<std::uint64_t>(out, table.bound());
    put_le<std::uint64_t>(out, table.form().z());
    put_le<std::uint8_t>(out, 2);

    constexpr std::size_t kChunk = 1 << 16;
    std::string buf;
    buf.reserve(2 * kChunk);
    const auto counts = table.counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        buf.push_back(static_cast<char>(counts[i] & 0xFF));
        buf.push_back(static_cast<char>(counts[i] >> 8));
        if (buf.size() >= 2 * kChunk) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("rep table: write failed");
}

RepTable read_rep_table(std::istream& in) {
    char magic[4] = {};
    in.read(magic, sizeof magic);
    if (!in || std::string(magic, 4) != std::string(kRepTableMagic, 4)) {
        throw std::runtime_error("rep table: bad magic");
    }
    const auto version = get_le<std::uint16_t>(in);
    if (version != kRepTableVersion) {
        throw std::runtime_error("rep table: unsupported version " + std::to_string(version));
    }
    const auto bound = get_le<std::uint64_t>(in);
    const auto z = get_le<std::uint64_t>(in);
    const auto width = get_le<std::uint8_t>(in);
    if (width != 2) throw std::runtime_error("rep table: element width must be 2");
    DiagonalForm form(z);

    std::vector<std::uint16_t> counts;
    constexpr std::size_t kChunk = 1 << 16;
    std::vector<unsigned char> buf(2 * kChunk);
    std::uint64_t remaining = bound;
    while (remaining > 0) {
        const std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kChunk));
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(2 * take));
        if (!in) throw std::runtime_error("rep table: truncated counts");
        for (std::size_t i = 0; i < take; ++i) {
            counts.push_back(static_cast<std::uint16_t>(buf[2 * i] | (buf[2 * i + 1] << 8)));
        }
        remaining -= take;
    }
    return RepTable(bound, form, std::move(counts));
}

void save_rep_table(const std::string& path, const RepTable& table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_rep_table(out, table);
}

RepTable load_rep_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_rep_table(in);
}

void write_rep_table_csv(std::ostream& out, const RepTable& table) {
    out << "n,r\n";
    const auto counts = table.counts();
    for (std::size_t i = 0; i < counts.size(); ++i) out << (i + 1) << ',' << counts[i] << '\n';
}

}  // namespace qfd
