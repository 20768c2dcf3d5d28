#include "evdf/edf.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <unordered_set>

#include "evdf/error.hpp"

namespace evdf {

namespace {

constexpr std::size_t kPrefixLength = 4 + 2 + 8 + 4;
constexpr std::size_t kEntryFixedLength = 1 + 1 + 8 + 8 + 8;
constexpr int kDeflateLevel = 6;

// ------------------------------------------------------------ byte helpers

class ByteWriter {
public:
    explicit ByteWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) { put_le(v, 2); }
    void u32(std::uint32_t v) { put_le(v, 4); }
    void u64(std::uint64_t v) { put_le(v, 8); }
    void i64(std::int64_t v) { put_le(static_cast<std::uint64_t>(v), 8); }
    void f64(double v) { put_le(std::bit_cast<std::uint64_t>(v), 8); }
    void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }

private:
    void put_le(std::uint64_t v, int n) {
        for (int k = 0; k < n; ++k) out_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
    }

    std::vector<std::uint8_t>& out_;
};

class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> data, Errc on_short) : data_(data), on_short_(on_short) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get_le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get_le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get_le(4)); }
    std::uint64_t u64() { return get_le(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(get_le(8)); }
    double f64() { return std::bit_cast<double>(get_le(8)); }

    std::span<const std::uint8_t> take(std::size_t n) {
        need(n);
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n) throw Error(on_short_, "unexpected end of data");
    }

    std::uint64_t get_le(int n) {
        need(static_cast<std::size_t>(n));
        std::uint64_t v = 0;
        for (int k = 0; k < n; ++k) v |= static_cast<std::uint64_t>(data_[pos_ + k]) << (8 * k);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }

    std::span<const std::uint8_t> data_;
    Errc on_short_;
    std::size_t pos_ = 0;
};

// ------------------------------------------------------------- sources

class ByteSource {
public:
    virtual ~ByteSource() = default;
    virtual std::uint64_t size() const = 0;
    virtual void read(std::uint64_t offset, std::span<std::uint8_t> out) = 0;

    std::vector<std::uint8_t> read(std::uint64_t offset, std::uint64_t n) {
        if (offset > size() || n > size() - offset) throw Error(Errc::Truncated, "read past end of file");
        std::vector<std::uint8_t> buf(n);
        read(offset, buf);
        bytes_read += n;
        return buf;
    }

    std::uint64_t bytes_read = 0;
};

class SpanSource final : public ByteSource {
public:
    explicit SpanSource(std::span<const std::uint8_t> data) : data_(data) {}
    std::uint64_t size() const override { return data_.size(); }
    void read(std::uint64_t offset, std::span<std::uint8_t> out) override {
        if (!out.empty()) std::memcpy(out.data(), data_.data() + offset, out.size());
    }

private:
    std::span<const std::uint8_t> data_;
};

class FileSource final : public ByteSource {
public:
    explicit FileSource(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw Error(Errc::Io, "cannot open '" + path.string() + "'");
        std::error_code ec;
        size_ = std::filesystem::file_size(path, ec);
        if (ec) throw Error(Errc::Io, "cannot stat '" + path.string() + "': " + ec.message());
    }
    std::uint64_t size() const override { return size_; }
    void read(std::uint64_t offset, std::span<std::uint8_t> out) override {
        if (out.empty()) return;
        in_.seekg(static_cast<std::streamoff>(offset));
        in_.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(out.size()));
        if (!in_) throw Error(Errc::Io, "short read from '" + path_.string() + "'");
    }

private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::uint64_t size_ = 0;
};

// --------------------------------------------------------------- deflate

std::vector<std::uint8_t> deflate_block(std::span<const std::uint8_t> in) {
    z_stream zs{};
    if (deflateInit2(&zs, kDeflateLevel, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw Error(Errc::Io, "deflateInit2 failed");
    }
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(in.size())));
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw Error(Errc::Io, "deflate did not finish");
    out.resize(produced);
    return out;
}

std::vector<std::uint8_t> inflate_block(std::span<const std::uint8_t> in, std::uint64_t expected) {
    std::vector<std::uint8_t> out(expected);
    std::uint8_t sink = 0;
    z_stream zs{};
    if (inflateInit2(&zs, -15) != Z_OK) throw Error(Errc::CorruptBlock, "inflateInit2 failed");
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.empty() ? &sink : out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected) {
        throw Error(Errc::CorruptBlock, "deflate stream does not decode to the declared length");
    }
    return out;
}

// ------------------------------------------------------------ block codec

void encode_value(ByteWriter& w, const AttrValue& v, bool with_tag) {
    if (with_tag) w.u8(static_cast<std::uint8_t>(v.tag()));
    switch (v.tag()) {
        case ValueTag::Str:
            w.u32(static_cast<std::uint32_t>(v.as_str().size()));
            w.bytes(v.as_str());
            break;
        case ValueTag::Int: w.i64(v.as_int()); break;
        case ValueTag::Float: w.f64(v.as_float()); break;
        case ValueTag::Timestamp: w.i64(v.as_timestamp().ms); break;
        case ValueTag::Missing: break;
    }
}

std::vector<std::uint8_t> encode_block(const Column& col) {
    const std::size_t rows = col.values.size();
    std::vector<std::uint8_t> out((rows + 7) / 8, 0);
    for (std::size_t row = 0; row < rows; ++row) {
        if (!col.values[row].is_missing()) out[row / 8] |= static_cast<std::uint8_t>(1u << (row % 8));
    }
    ByteWriter w(out);
    const bool tagged = col.type == ColumnType::Object;
    for (const auto& v : col.values) {
        if (!v.is_missing()) encode_value(w, v, tagged);
    }
    return out;
}

AttrValue decode_value(ByteReader& r, ValueTag tag) {
    switch (tag) {
        case ValueTag::Str: {
            const auto len = r.u32();
            const auto bytes = r.take(len);
            return AttrValue::of_str(std::string(bytes.begin(), bytes.end()));
        }
        case ValueTag::Int: return AttrValue::of_int(r.i64());
        case ValueTag::Float: {
            const double d = r.f64();
            if (std::isnan(d)) throw Error(Errc::CorruptBlock, "NaN in float column");
            return AttrValue::of_float(d);
        }
        case ValueTag::Timestamp: return AttrValue::of_timestamp_ms(r.i64());
        case ValueTag::Missing: break;
    }
    throw Error(Errc::CorruptBlock, "bad value tag");
}

Column decode_block(std::span<const std::uint8_t> block, ColumnType type, std::uint64_t rows) {
    const std::uint64_t bitmap_len = (rows + 7) / 8;
    if (bitmap_len > block.size()) throw Error(Errc::CorruptBlock, "block shorter than its presence bitmap");
    ByteReader r(block, Errc::CorruptBlock);
    const auto bitmap = r.take(bitmap_len);
    Column col;
    col.type = type;
    col.values.resize(rows);
    for (std::uint64_t row = 0; row < rows; ++row) {
        if (!(bitmap[row / 8] & (1u << (row % 8)))) continue;
        ValueTag tag;
        if (type == ColumnType::Object) {
            const auto code = r.u8();
            if (code > static_cast<std::uint8_t>(ValueTag::Timestamp)) throw Error(Errc::CorruptBlock, "bad type byte");
            tag = static_cast<ValueTag>(code);
        } else {
            tag = static_cast<ValueTag>(static_cast<std::uint8_t>(type));
        }
        col.values[row] = decode_value(r, tag);
    }
    if (r.remaining() != 0) throw Error(Errc::CorruptBlock, "trailing bytes after column values");
    return col;
}

// ------------------------------------------------------------ header codec

std::uint32_t ordinal_of(const Dataframe& df, const std::string& name) {
    return static_cast<std::uint32_t>(df.column_position(name));
}

void write_header(std::vector<std::uint8_t>& out, const EdfHeader& h) {
    ByteWriter w(out);
    w.bytes(std::string_view(kEdfMagic, 4));
    w.u16(h.version);
    w.u64(h.row_count);
    w.u32(static_cast<std::uint32_t>(h.directory.size()));
    for (const auto& m : h.directory) {
        w.u16(static_cast<std::uint16_t>(m.name.size()));
        w.bytes(m.name);
        w.u8(static_cast<std::uint8_t>(m.type));
        w.u8(static_cast<std::uint8_t>(m.compression));
        w.u64(m.offset);
        w.u64(m.compressed_length);
        w.u64(m.uncompressed_length);
    }
    w.u32(h.case_column_ordinal);
    w.u32(h.activity_column_ordinal);
}

[[noreturn]] void corrupt(const std::string& what) {
    throw Error(Errc::CorruptDirectory, what);
}

EdfHeader parse_header(ByteSource& src) {
    EdfHeader h;
    if (src.size() < 4) throw Error(Errc::Truncated, "file shorter than the magic number");
    const auto prefix = src.read(0, std::min<std::uint64_t>(src.size(), kPrefixLength));
    if (std::memcmp(prefix.data(), kEdfMagic, 4) != 0) throw Error(Errc::BadMagic, "not an EDF1 file");
    ByteReader r(prefix, Errc::Truncated);
    r.take(4);
    h.version = r.u16();
    if (h.version != kEdfVersion) {
        throw Error(Errc::UnsupportedVersion, "EDF version " + std::to_string(h.version) + " is not supported");
    }
    h.row_count = r.u64();
    const std::uint32_t column_count = r.u32();
    if (column_count == 0) corrupt("file declares no columns");
    if (static_cast<std::uint64_t>(column_count) * (2 + kEntryFixedLength) > src.size()) {
        corrupt("column count exceeds file size");
    }

    std::uint64_t pos = kPrefixLength;
    std::unordered_set<std::string> names;
    h.directory.reserve(column_count);
    for (std::uint32_t k = 0; k < column_count; ++k) {
        const auto len_bytes = src.read(pos, 2);
        const std::uint16_t name_len = static_cast<std::uint16_t>(len_bytes[0] | (len_bytes[1] << 8));
        pos += 2;
        const auto entry = src.read(pos, name_len + kEntryFixedLength);
        pos += entry.size();
        ByteReader e(entry, Errc::Truncated);
        const auto name = e.take(name_len);
        EdfColumnMeta m;
        m.name.assign(name.begin(), name.end());
        const auto type = e.u8();
        const auto compression = e.u8();
        if (type > static_cast<std::uint8_t>(ColumnType::Object)) corrupt("column '" + m.name + "' has bad type code");
        if (compression > static_cast<std::uint8_t>(Compression::Deflate)) {
            corrupt("column '" + m.name + "' has bad compression code");
        }
        m.type = static_cast<ColumnType>(type);
        m.compression = static_cast<Compression>(compression);
        m.offset = e.u64();
        m.compressed_length = e.u64();
        m.uncompressed_length = e.u64();
        if (!names.insert(m.name).second) corrupt("column '" + m.name + "' appears twice");
        if (m.compression == Compression::None && m.compressed_length != m.uncompressed_length) {
            corrupt("uncompressed column '" + m.name + "' declares differing lengths");
        }
        h.directory.push_back(std::move(m));
    }
    const auto tail = src.read(pos, 8);
    ByteReader t(tail, Errc::Truncated);
    h.case_column_ordinal = t.u32();
    h.activity_column_ordinal = t.u32();
    pos += 8;
    h.header_length = pos;
    if (h.case_column_ordinal >= column_count || h.activity_column_ordinal >= column_count) {
        corrupt("case/activity ordinal out of range");
    }

    std::vector<const EdfColumnMeta*> by_offset;
    for (const auto& m : h.directory) {
        if (m.offset < h.header_length) corrupt("column '" + m.name + "' starts inside the header");
        if (m.offset > src.size() || m.compressed_length > src.size() - m.offset) {
            corrupt("column '" + m.name + "' extends past the end of the file");
        }
        const std::uint64_t bitmap_len = (h.row_count + 7) / 8;
        if (m.uncompressed_length < bitmap_len) corrupt("column '" + m.name + "' is shorter than its bitmap");
        by_offset.push_back(&m);
    }
    std::sort(by_offset.begin(), by_offset.end(),
              [](const EdfColumnMeta* a, const EdfColumnMeta* b) { return a->offset < b->offset; });
    for (std::size_t k = 1; k < by_offset.size(); ++k) {
        if (by_offset[k - 1]->offset + by_offset[k - 1]->compressed_length > by_offset[k]->offset) {
            corrupt("columns '" + by_offset[k - 1]->name + "' and '" + by_offset[k]->name + "' overlap");
        }
    }
    return h;
}

Dataframe read_from(ByteSource& src, const std::optional<std::vector<std::string>>& columns, EdfReadStats* stats) {
    const EdfHeader h = parse_header(src);
    std::vector<bool> wanted(h.directory.size(), !columns);
    if (columns) {
        for (const auto& name : *columns) {
            auto it = std::find_if(h.directory.begin(), h.directory.end(),
                                   [&](const EdfColumnMeta& m) { return m.name == name; });
            if (it == h.directory.end()) throw Error(Errc::UnknownAttribute, "file has no column '" + name + "'");
            wanted[static_cast<std::size_t>(it - h.directory.begin())] = true;
        }
        wanted[h.case_column_ordinal] = true;
        wanted[h.activity_column_ordinal] = true;
    }

    EdfReadStats local;
    std::vector<std::pair<std::string, Column>> cols;
    for (std::size_t k = 0; k < h.directory.size(); ++k) {
        if (!wanted[k]) continue;
        const EdfColumnMeta& m = h.directory[k];
        const auto raw = src.read(m.offset, m.compressed_length);
        local.block_bytes_decoded += m.compressed_length;
        ++local.columns_decoded;
        if (m.compression == Compression::Deflate) {
            const auto block = inflate_block(raw, m.uncompressed_length);
            cols.emplace_back(m.name, decode_block(block, m.type, h.row_count));
        } else {
            cols.emplace_back(m.name, decode_block(raw, m.type, h.row_count));
        }
    }
    local.bytes_read = src.bytes_read;
    if (stats) *stats = local;
    return Dataframe::build(std::move(cols), h.directory[h.case_column_ordinal].name,
                            h.directory[h.activity_column_ordinal].name);
}

}  // namespace

std::vector<std::uint8_t> write_edf(const Dataframe& df, Compression compression) {
    EdfHeader h;
    h.row_count = df.row_count();
    h.case_column_ordinal = ordinal_of(df, df.case_column());
    h.activity_column_ordinal = ordinal_of(df, df.activity_column());

    std::vector<std::vector<std::uint8_t>> blocks;
    blocks.reserve(df.column_count());
    std::uint64_t header_length = kPrefixLength + 8;
    for (const auto& [name, col] : df.columns()) {
        if (name.size() > 0xffff) throw Error(Errc::InvalidArgument, "column name longer than 65535 bytes");
        auto block = encode_block(*col);
        EdfColumnMeta m;
        m.name = name;
        m.type = col->type;
        m.compression = compression;
        m.uncompressed_length = block.size();
        if (compression == Compression::Deflate) block = deflate_block(block);
        m.compressed_length = block.size();
        header_length += 2 + name.size() + kEntryFixedLength;
        h.directory.push_back(std::move(m));
        blocks.push_back(std::move(block));
    }
    std::uint64_t offset = header_length;
    for (auto& m : h.directory) {
        m.offset = offset;
        offset += m.compressed_length;
    }

    std::vector<std::uint8_t> out;
    out.reserve(offset);
    write_header(out, h);
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

void write_edf_file(const std::filesystem::path& path, const Dataframe& df, Compression compression) {
    const auto bytes = write_edf(df, compression);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::Io, "failed writing '" + path.string() + "'");
}

EdfHeader read_edf_header(std::span<const std::uint8_t> bytes) {
    SpanSource src(bytes);
    return parse_header(src);
}

EdfHeader read_edf_header_file(const std::filesystem::path& path) {
    FileSource src(path);
    return parse_header(src);
}

Dataframe read_edf(std::span<const std::uint8_t> bytes, const std::optional<std::vector<std::string>>& columns,
                   EdfReadStats* stats) {
    SpanSource src(bytes);
    return read_from(src, columns, stats);
}

Dataframe read_edf_file(const std::filesystem::path& path, const std::optional<std::vector<std::string>>& columns,
                        EdfReadStats* stats) {
    FileSource src(path);
    return read_from(src, columns, stats);
}

std::vector<std::uint8_t> csv_to_edf(std::string_view csv, const CsvOptions& options, Compression compression) {
    return write_edf(ingest_csv(csv, options), compression);
}

std::vector<std::uint8_t> csv_to_edf(std::istream& csv, const CsvOptions& options, Compression compression) {
    return write_edf(ingest_csv(csv, options), compression);
}

}  // namespace evdf
