#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "duplex/frame_clock.hpp"

namespace duplex {

// One quantizer stage: K codewords of dimension D, stored row-major.
struct Codebook {
    int depth_index = 0;
    int dim = 0;
    std::vector<double> entries; // size() == K * dim

    int size() const { return dim == 0 ? 0 : static_cast<int>(entries.size()) / dim; }
    std::span<const double> entry(int k) const {
        return {entries.data() + static_cast<size_t>(k) * dim, static_cast<size_t>(dim)};
    }
};

// Per-frame vector of code indices, one per residual depth. Depth 0 is the
// semantic code, deeper entries are acoustic refinements.
struct CodecFrame {
    std::vector<int> codes;

    bool operator==(const CodecFrame&) const = default;
};

// Mock residual vector quantizer: a stack of codebooks where each depth
// encodes the residual left by the shallower depths, and decoding sums the
// dequantized codewords of all requested depths.
class RvqCodec {
public:
    static constexpr int kDefaultDepths = 16;
    static constexpr int kDefaultCodewords = 2048;
    static constexpr int kDefaultDim = 512;

    RvqCodec(FrameClock clock, std::vector<Codebook> codebooks);

    // Random codec with the zero codeword at index 0 of every acoustic depth
    // and per-depth entry scale 1/(d+1), so greedy refinement is
    // non-increasing by construction.
    static RvqCodec random(int dim, int depths, int codewords, uint64_t seed,
                           FrameClock clock = {});

    int dim() const { return dim_; }
    int depths() const { return static_cast<int>(codebooks_.size()); }
    const Codebook& codebook(int depth) const { return codebooks_.at(depth); }
    const FrameClock& clock() const { return clock_; }

    // Greedy per-depth nearest neighbor on the running residual. Distance
    // ties break toward the lowest code index.
    CodecFrame encode_frame(std::span<const double> embedding) const;

    // Sum of the dequantized codewords of the first `depth` depths;
    // depth == depths() is full reconstruction.
    std::vector<double> decode_frame(const CodecFrame& frame, int depth) const;

    // Canonical speech payload for non-speaking frames: the encoding of the
    // zero embedding.
    const CodecFrame& silence_frame() const { return silence_frame_; }

    bool frame_valid(const CodecFrame& frame) const;

    std::string to_json() const;
    static RvqCodec from_json(const std::string& text);
    void save(const std::string& path) const;
    static RvqCodec load(const std::string& path);

private:
    FrameClock clock_;
    int dim_ = 0;
    std::vector<Codebook> codebooks_;
    CodecFrame silence_frame_;
};

// Per-depth, per-iteration quantization MSE recorded during fitting.
struct FitTrace {
    std::vector<std::vector<double>> mse; // [depth][iteration]
};

// Residual k-means: Lloyd's algorithm per depth on the residuals of the
// shallower depths. Deterministic given the seed. Empty clusters are
// reseeded from the point farthest from its assigned centroid.
RvqCodec fit_codebooks(const std::vector<std::vector<double>>& training_frames, int depths,
                       int codewords, int iterations, uint64_t seed, FrameClock clock = {},
                       FitTrace* trace = nullptr);

// Mean squared reconstruction error of `codec` over `frames` at `depth`.
double reconstruction_mse(const RvqCodec& codec, const std::vector<std::vector<double>>& frames,
                          int depth);

} // namespace duplex
