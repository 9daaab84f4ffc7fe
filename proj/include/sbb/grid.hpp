#pragma once

#include <vector>

#include "sbb/key.hpp"

namespace sbb {

struct PixelCoord {
    int x = 0;
    int y = 0;
    bool operator==(const PixelCoord&) const = default;
};

// R x C partition of an image into equal floor-sized blocks. Remainder
// pixels at x >= cols*block_width or y >= rows*block_height belong to no
// block and are never touched.
struct BlockGrid {
    int image_width = 0;
    int image_height = 0;
    int rows = 0;
    int cols = 0;
    int block_width = 0;
    int block_height = 0;

    int block_count() const { return rows * cols; }
    int block_pixel_count() const { return block_width * block_height; }
    int covered_width() const { return cols * block_width; }
    int covered_height() const { return rows * block_height; }
};

BlockGrid make_grid(int width, int height, const StegoKey& key);

// Blocks are indexed row-major: block (i, j) has index i*cols + j. Pixels
// inside a block are visited in raster order (y outer, x inner). The codec
// relies on this exact enumeration order.
template <typename Fn>
void for_each_block_pixel(const BlockGrid& grid, int block_index, Fn&& fn) {
    const int x0 = (block_index % grid.cols) * grid.block_width;
    const int y0 = (block_index / grid.cols) * grid.block_height;
    for (int y = y0; y < y0 + grid.block_height; ++y)
        for (int x = x0; x < x0 + grid.block_width; ++x)
            fn(x, y);
}

std::vector<PixelCoord> block_pixels(const BlockGrid& grid, int block_index);

} // namespace sbb
