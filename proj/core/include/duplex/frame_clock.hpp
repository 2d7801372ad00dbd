#pragma once

#include <cstdint>

namespace duplex {

// The 12.5 Hz token grid over 24 kHz audio: one frame is 1920 samples (80 ms).
struct FrameClock {
    double frame_rate = 12.5;
    int64_t sample_rate = 24000;
    int64_t samples_per_frame = 1920;
};

// Validates rates and exact divisibility (samples_per_frame * frame_rate == sample_rate).
FrameClock make_frame_clock(double frame_rate, int64_t sample_rate);

// Half-open [start_sample, end_sample) at the clock's sample rate.
struct SampleInterval {
    int64_t start_sample = 0;
    int64_t end_sample = 0;

    bool valid() const { return start_sample >= 0 && start_sample < end_sample; }
    int64_t length() const { return end_sample - start_sample; }
    bool operator==(const SampleInterval&) const = default;
};

// Half-open [start_frame, end_frame) on the token grid.
struct FrameInterval {
    int64_t start_frame = 0;
    int64_t end_frame = 0;

    int64_t length() const { return end_frame - start_frame; }
    bool operator==(const FrameInterval&) const = default;
};

// Cover semantics: an event audible in any part of a frame occupies that frame.
// start_frame = floor(start / spf), end_frame = ceil(end / spf).
FrameInterval to_frames(const SampleInterval& interval, const FrameClock& clock);

double frame_to_seconds(int64_t frame_index, const FrameClock& clock);
double sample_to_seconds(int64_t sample, const FrameClock& clock);
int64_t seconds_to_samples(double seconds, const FrameClock& clock);

// max(0, min(ends) - max(starts)); symmetric, zero for touching intervals.
int64_t overlap_duration(const SampleInterval& a, const SampleInterval& b);

} // namespace duplex
