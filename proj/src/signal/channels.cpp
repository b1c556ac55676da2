#include <algorithm>
#include <cmath>
#include <string>

#include "subspace/error.hpp"
#include "subspace/signal.hpp"

namespace subspace::signal {

void ChannelSet::validate() const {
    if (channels.empty()) throw Error(ErrorCode::invalid_input, "channel set is empty");
    const std::size_t n = channels.front().size();
    if (n < 2) throw Error(ErrorCode::invalid_input, "channels need at least 2 samples");
    for (std::size_t c = 0; c < channels.size(); ++c) {
        if (channels[c].size() != n) {
            throw Error(ErrorCode::invalid_input, "channel " + std::to_string(c) + " has " +
                                                      std::to_string(channels[c].size()) + " samples, expected " +
                                                      std::to_string(n));
        }
        if (!std::all_of(channels[c].begin(), channels[c].end(), [](double v) { return std::isfinite(v); })) {
            throw Error(ErrorCode::invalid_input, "channel " + std::to_string(c) + " has a non-finite sample");
        }
    }
    if (!labels.empty() && labels.size() != channels.size()) {
        throw Error(ErrorCode::invalid_input, "label count does not match channel count");
    }
    if (sample_rate && !(*sample_rate > 0.0)) throw Error(ErrorCode::invalid_input, "sample rate must be positive");
}

EmbedLayout EmbedLayout::channel_columns(std::size_t window, std::span<const std::size_t> offsets) {
    EmbedLayout layout;
    layout.mode = EmbedMode::channel_columns;
    layout.window_length = window;
    for (std::size_t j = 0; j < offsets.size(); ++j) layout.columns.push_back({j, offsets[j]});
    return layout;
}

EmbedLayout EmbedLayout::whole_channels(const ChannelSet& signals) {
    const std::vector<std::size_t> offsets(signals.channel_count(), 0);
    return channel_columns(signals.samples_per_channel(), offsets);
}

EmbedLayout EmbedLayout::hankel(std::size_t window, std::size_t stride, std::size_t channel) {
    EmbedLayout layout;
    layout.mode = EmbedMode::hankel_sliding;
    layout.window_length = window;
    layout.stride = stride;
    layout.hankel_channel = channel;
    return layout;
}

std::size_t EmbedLayout::column_count(std::size_t samples) const {
    if (mode == EmbedMode::channel_columns) return columns.size();
    if (window_length > samples || stride == 0) return 0;
    return (samples - window_length) / stride + 1;
}

void EmbedLayout::validate(const ChannelSet& signals) const {
    signals.validate();
    if (window_length < 2) throw Error(ErrorCode::layout, "window length must be >= 2");
    const std::size_t samples = signals.samples_per_channel();
    if (mode == EmbedMode::hankel_sliding) {
        if (stride < 1) throw Error(ErrorCode::layout, "stride must be >= 1");
        if (hankel_channel >= signals.channel_count()) {
            throw Error(ErrorCode::range, "hankel channel " + std::to_string(hankel_channel) + " does not exist");
        }
        if (window_length > samples) {
            throw Error(ErrorCode::range, "window length " + std::to_string(window_length) + " exceeds " +
                                              std::to_string(samples) + " samples");
        }
        return;
    }
    if (columns.empty()) throw Error(ErrorCode::layout, "layout has no columns");
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const ColumnSource& src = columns[j];
        if (src.channel >= signals.channel_count()) {
            throw Error(ErrorCode::range, "column " + std::to_string(j) + " reads missing channel " +
                                              std::to_string(src.channel));
        }
        if (src.offset + window_length > samples) {
            throw Error(ErrorCode::range, "column " + std::to_string(j) + " window [" + std::to_string(src.offset) +
                                              ", " + std::to_string(src.offset + window_length) +
                                              ") runs past " + std::to_string(samples) + " samples");
        }
    }
}

namespace {

// (channel, start) of every column.
std::vector<ColumnSource> column_sources(const EmbedLayout& layout, std::size_t column_count) {
    if (layout.mode == EmbedMode::channel_columns) return layout.columns;
    std::vector<ColumnSource> out(column_count);
    for (std::size_t j = 0; j < column_count; ++j) out[j] = {layout.hankel_channel, j * layout.stride};
    return out;
}

}  // namespace

Matrix embed(const ChannelSet& signals, const EmbedLayout& layout) {
    layout.validate(signals);
    const std::size_t cols = layout.column_count(signals.samples_per_channel());
    const std::vector<ColumnSource> sources = column_sources(layout, cols);
    Matrix m(layout.window_length, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        const std::vector<double>& ch = signals.channels[sources[j].channel];
        for (std::size_t r = 0; r < layout.window_length; ++r) m(r, j) = ch[sources[j].offset + r];
    }
    return m;
}

ChannelSet unembed(const Matrix& m, const EmbedLayout& layout, std::size_t target_length) {
    if (m.rows() != layout.window_length) {
        throw Error(ErrorCode::layout, "unembed: matrix has " + std::to_string(m.rows()) + " rows, layout window is " +
                                           std::to_string(layout.window_length));
    }
    if (layout.mode == EmbedMode::channel_columns && m.cols() != layout.columns.size()) {
        throw Error(ErrorCode::layout, "unembed: matrix has " + std::to_string(m.cols()) + " columns, layout has " +
                                           std::to_string(layout.columns.size()));
    }
    if (layout.mode == EmbedMode::hankel_sliding && layout.stride == 0) {
        throw Error(ErrorCode::layout, "unembed: stride must be >= 1");
    }
    const std::vector<ColumnSource> sources = column_sources(layout, m.cols());
    std::size_t channel_count = 0;
    for (const ColumnSource& src : sources) {
        channel_count = std::max(channel_count, src.channel + 1);
        if (src.offset + layout.window_length > target_length) {
            throw Error(ErrorCode::layout, "unembed: window at offset " + std::to_string(src.offset) +
                                               " exceeds target length " + std::to_string(target_length));
        }
    }
    std::vector<std::vector<double>> sums(channel_count, std::vector<double>(target_length, 0.0));
    std::vector<std::vector<std::size_t>> counts(channel_count, std::vector<std::size_t>(target_length, 0));
    for (std::size_t j = 0; j < sources.size(); ++j) {
        auto& sum = sums[sources[j].channel];
        auto& count = counts[sources[j].channel];
        for (std::size_t r = 0; r < layout.window_length; ++r) {
            sum[sources[j].offset + r] += m(r, j);
            ++count[sources[j].offset + r];
        }
    }
    ChannelSet out;
    out.channels.resize(channel_count);
    for (std::size_t c = 0; c < channel_count; ++c) {
        out.channels[c].resize(target_length, 0.0);
        for (std::size_t t = 0; t < target_length; ++t)
            if (counts[c][t] > 0) out.channels[c][t] = sums[c][t] / static_cast<double>(counts[c][t]);
    }
    return out;
}

}  // namespace subspace::signal
