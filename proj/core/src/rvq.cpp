#include "duplex/rvq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "duplex/errors.hpp"
#include "duplex/io_util.hpp"
#include "duplex/rng.hpp"

namespace duplex {

using nlohmann::json;

namespace {

constexpr int kCodecFormatVersion = 1;

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

// Nearest codeword to `point`; ties break toward the lowest index via
// strict less-than.
int nearest_entry(const Codebook& book, std::span<const double> point) {
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int k = 0; k < book.size(); ++k) {
        double dist = squared_distance(point, book.entry(k));
        if (dist < best_dist) {
            best_dist = dist;
            best = k;
        }
    }
    return best;
}

} // namespace

RvqCodec::RvqCodec(FrameClock clock, std::vector<Codebook> codebooks)
    : clock_(clock), codebooks_(std::move(codebooks)) {
    if (codebooks_.empty()) {
        throw std::invalid_argument("RvqCodec needs at least one codebook");
    }
    dim_ = codebooks_.front().dim;
    for (size_t d = 0; d < codebooks_.size(); ++d) {
        auto& book = codebooks_[d];
        book.depth_index = static_cast<int>(d);
        if (book.dim != dim_) {
            throw DimensionError("codebook " + std::to_string(d) + " dimension " +
                                 std::to_string(book.dim) + " != " + std::to_string(dim_));
        }
        if (book.size() < 1) {
            throw std::invalid_argument("codebook " + std::to_string(d) + " is empty");
        }
    }
    std::vector<double> zero(static_cast<size_t>(dim_), 0.0);
    silence_frame_ = encode_frame(zero);
}

RvqCodec RvqCodec::random(int dim, int depths, int codewords, uint64_t seed, FrameClock clock) {
    if (dim < 1 || depths < 1 || codewords < 1) {
        throw std::invalid_argument("random codec: dim, depths, codewords must be positive");
    }
    SeededRng rng(seed);
    std::vector<Codebook> books(static_cast<size_t>(depths));
    for (int d = 0; d < depths; ++d) {
        auto& book = books[static_cast<size_t>(d)];
        book.dim = dim;
        book.entries.resize(static_cast<size_t>(codewords) * dim);
        double scale = 1.0 / static_cast<double>(d + 1);
        for (int k = 0; k < codewords; ++k) {
            for (int j = 0; j < dim; ++j) {
                double v = rng.uniform(-1.0, 1.0) * scale;
                // zero codeword at index 0 of acoustic depths: a depth can
                // always choose to leave the residual untouched
                if (d > 0 && k == 0) v = 0.0;
                book.entries[static_cast<size_t>(k) * dim + j] = v;
            }
        }
    }
    return RvqCodec(clock, std::move(books));
}

CodecFrame RvqCodec::encode_frame(std::span<const double> embedding) const {
    if (static_cast<int>(embedding.size()) != dim_) {
        throw DimensionError("encode_frame: embedding dimension " +
                             std::to_string(embedding.size()) + " != codec dimension " +
                             std::to_string(dim_));
    }
    std::vector<double> residual(embedding.begin(), embedding.end());
    CodecFrame frame;
    frame.codes.reserve(codebooks_.size());
    for (const auto& book : codebooks_) {
        int k = nearest_entry(book, residual);
        frame.codes.push_back(k);
        auto entry = book.entry(k);
        for (int j = 0; j < dim_; ++j) residual[static_cast<size_t>(j)] -= entry[j];
    }
    return frame;
}

std::vector<double> RvqCodec::decode_frame(const CodecFrame& frame, int depth) const {
    if (depth < 1 || depth > depths()) {
        throw std::invalid_argument("decode_frame: depth " + std::to_string(depth) +
                                    " out of range [1, " + std::to_string(depths()) + "]");
    }
    if (static_cast<int>(frame.codes.size()) != depths()) {
        throw DataError("decode_frame: frame has " + std::to_string(frame.codes.size()) +
                        " codes, codec has " + std::to_string(depths()) + " depths");
    }
    std::vector<double> out(static_cast<size_t>(dim_), 0.0);
    for (int d = 0; d < depth; ++d) {
        const auto& book = codebooks_[static_cast<size_t>(d)];
        int k = frame.codes[static_cast<size_t>(d)];
        if (k < 0 || k >= book.size()) {
            throw DataError("decode_frame: code " + std::to_string(k) + " out of range at depth " +
                            std::to_string(d));
        }
        auto entry = book.entry(k);
        for (int j = 0; j < dim_; ++j) out[static_cast<size_t>(j)] += entry[j];
    }
    return out;
}

bool RvqCodec::frame_valid(const CodecFrame& frame) const {
    if (static_cast<int>(frame.codes.size()) != depths()) return false;
    for (int d = 0; d < depths(); ++d) {
        int k = frame.codes[static_cast<size_t>(d)];
        if (k < 0 || k >= codebooks_[static_cast<size_t>(d)].size()) return false;
    }
    return true;
}

std::string RvqCodec::to_json() const {
    json books = json::array();
    for (const auto& book : codebooks_) {
        books.push_back(json{{"k", book.size()}, {"entries", book.entries}});
    }
    json doc{{"version", kCodecFormatVersion},
             {"dim", dim_},
             {"depths", depths()},
             {"sample_rate", clock_.sample_rate},
             {"frame_rate", clock_.frame_rate},
             {"codebooks", books}};
    return doc.dump();
}

RvqCodec RvqCodec::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid codec JSON: ") + e.what());
    }
    try {
        if (!doc.contains("version")) {
            throw ParseError("codec document is missing the mandatory version field");
        }
        int version = doc.at("version").get<int>();
        if (version != kCodecFormatVersion) {
            throw ParseError("unsupported codec format version " + std::to_string(version));
        }
        int dim = doc.at("dim").get<int>();
        int depths = doc.at("depths").get<int>();
        FrameClock clock = make_frame_clock(doc.at("frame_rate").get<double>(),
                                            doc.at("sample_rate").get<int64_t>());
        std::vector<Codebook> books;
        for (const auto& entry : doc.at("codebooks")) {
            Codebook book;
            book.dim = dim;
            book.entries = entry.at("entries").get<std::vector<double>>();
            int k = entry.at("k").get<int>();
            if (book.size() != k) {
                throw ParseError("codebook entry count does not match its k field");
            }
            books.push_back(std::move(book));
        }
        if (static_cast<int>(books.size()) != depths) {
            throw ParseError("codec depth count does not match its codebook list");
        }
        return RvqCodec(clock, std::move(books));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad codec document: ") + e.what());
    }
}

void RvqCodec::save(const std::string& path) const { atomic_write_file(path, to_json()); }

RvqCodec RvqCodec::load(const std::string& path) { return from_json(read_file(path)); }

RvqCodec fit_codebooks(const std::vector<std::vector<double>>& training_frames, int depths,
                       int codewords, int iterations, uint64_t seed, FrameClock clock,
                       FitTrace* trace) {
    if (depths < 1 || codewords < 1 || iterations < 1) {
        throw std::invalid_argument("fit_codebooks: depths, codewords, iterations must be >= 1");
    }
    if (training_frames.size() < static_cast<size_t>(codewords)) {
        throw DataError("fit_codebooks: " + std::to_string(training_frames.size()) +
                        " training frames < " + std::to_string(codewords) + " codewords");
    }
    const int dim = static_cast<int>(training_frames.front().size());
    for (const auto& f : training_frames) {
        if (static_cast<int>(f.size()) != dim) {
            throw DimensionError("fit_codebooks: inconsistent training frame dimensions");
        }
    }

    const size_t n = training_frames.size();
    std::vector<std::vector<double>> residuals = training_frames;
    std::vector<Codebook> books;
    if (trace) trace->mse.assign(static_cast<size_t>(depths), {});

    SeededRng rng(seed);
    for (int d = 0; d < depths; ++d) {
        // init: k distinct residuals, chosen by partial Fisher-Yates
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), size_t{0});
        for (int k = 0; k < codewords; ++k) {
            size_t j = static_cast<size_t>(rng.uniform_int(k, static_cast<int64_t>(n) - 1));
            std::swap(order[static_cast<size_t>(k)], order[j]);
        }
        Codebook book;
        book.dim = dim;
        book.entries.resize(static_cast<size_t>(codewords) * dim);
        for (int k = 0; k < codewords; ++k) {
            const auto& src = residuals[order[static_cast<size_t>(k)]];
            std::copy(src.begin(), src.end(), book.entries.begin() + static_cast<size_t>(k) * dim);
        }

        std::vector<int> assignment(n, 0);
        for (int it = 0; it < iterations; ++it) {
            // assignment step
            double sse = 0.0;
            for (size_t i = 0; i < n; ++i) {
                assignment[i] = nearest_entry(book, residuals[i]);
                sse += squared_distance(residuals[i], book.entry(assignment[i]));
            }
            if (trace) {
                trace->mse[static_cast<size_t>(d)].push_back(sse / static_cast<double>(n) /
                                                             static_cast<double>(dim));
            }

            // update step
            std::vector<double> sums(static_cast<size_t>(codewords) * dim, 0.0);
            std::vector<int64_t> counts(static_cast<size_t>(codewords), 0);
            for (size_t i = 0; i < n; ++i) {
                int k = assignment[i];
                counts[static_cast<size_t>(k)]++;
                for (int j = 0; j < dim; ++j) {
                    sums[static_cast<size_t>(k) * dim + j] += residuals[i][static_cast<size_t>(j)];
                }
            }
            for (int k = 0; k < codewords; ++k) {
                if (counts[static_cast<size_t>(k)] == 0) continue;
                for (int j = 0; j < dim; ++j) {
                    book.entries[static_cast<size_t>(k) * dim + j] =
                        sums[static_cast<size_t>(k) * dim + j] /
                        static_cast<double>(counts[static_cast<size_t>(k)]);
                }
            }
            // empty clusters: reseed from the point farthest from its centroid
            for (int k = 0; k < codewords; ++k) {
                if (counts[static_cast<size_t>(k)] != 0) continue;
                size_t farthest = 0;
                double max_dist = -1.0;
                for (size_t i = 0; i < n; ++i) {
                    double dist = squared_distance(residuals[i], book.entry(assignment[i]));
                    if (dist > max_dist) {
                        max_dist = dist;
                        farthest = i;
                    }
                }
                const auto& src = residuals[farthest];
                std::copy(src.begin(), src.end(),
                          book.entries.begin() + static_cast<size_t>(k) * dim);
                assignment[farthest] = k; // keep the donor out of the next farthest search
            }
        }

        // subtract this depth's quantization before fitting the next
        for (size_t i = 0; i < n; ++i) {
            int k = nearest_entry(book, residuals[i]);
            auto entry = book.entry(k);
            for (int j = 0; j < dim; ++j) residuals[i][static_cast<size_t>(j)] -= entry[j];
        }
        books.push_back(std::move(book));
    }

    return RvqCodec(clock, std::move(books));
}

double reconstruction_mse(const RvqCodec& codec, const std::vector<std::vector<double>>& frames,
                          int depth) {
    if (frames.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& f : frames) {
        CodecFrame code = codec.encode_frame(f);
        std::vector<double> rec = codec.decode_frame(code, depth);
        acc += squared_distance(f, rec);
    }
    return acc / static_cast<double>(frames.size()) / static_cast<double>(codec.dim());
}

} // namespace duplex
