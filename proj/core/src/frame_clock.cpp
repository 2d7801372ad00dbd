#include "duplex/frame_clock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace duplex {

FrameClock make_frame_clock(double frame_rate, int64_t sample_rate) {
    if (frame_rate <= 0 || sample_rate <= 0) {
        throw std::invalid_argument("frame_rate and sample_rate must be positive");
    }
    double spf = static_cast<double>(sample_rate) / frame_rate;
    int64_t samples_per_frame = static_cast<int64_t>(spf);
    if (static_cast<double>(samples_per_frame) * frame_rate != static_cast<double>(sample_rate)) {
        throw std::invalid_argument("sample_rate " + std::to_string(sample_rate) +
                                    " is not an integer multiple of frame_rate");
    }
    return FrameClock{frame_rate, sample_rate, samples_per_frame};
}

FrameInterval to_frames(const SampleInterval& interval, const FrameClock& clock) {
    if (!interval.valid()) {
        throw std::invalid_argument("to_frames: invalid interval [" +
                                    std::to_string(interval.start_sample) + ", " +
                                    std::to_string(interval.end_sample) + ")");
    }
    int64_t spf = clock.samples_per_frame;
    return FrameInterval{interval.start_sample / spf,
                         (interval.end_sample + spf - 1) / spf};
}

double frame_to_seconds(int64_t frame_index, const FrameClock& clock) {
    if (frame_index < 0) {
        throw std::invalid_argument("frame_to_seconds: negative frame index");
    }
    return static_cast<double>(frame_index) / clock.frame_rate;
}

double sample_to_seconds(int64_t sample, const FrameClock& clock) {
    return static_cast<double>(sample) / static_cast<double>(clock.sample_rate);
}

int64_t seconds_to_samples(double seconds, const FrameClock& clock) {
    return static_cast<int64_t>(std::llround(seconds * static_cast<double>(clock.sample_rate)));
}

int64_t overlap_duration(const SampleInterval& a, const SampleInterval& b) {
    if (!a.valid() || !b.valid()) {
        throw std::invalid_argument("overlap_duration: invalid interval");
    }
    return std::max<int64_t>(0, std::min(a.end_sample, b.end_sample) -
                                    std::max(a.start_sample, b.start_sample));
}

} // namespace duplex
