#pragma once

#include "emit.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "grid_io.hpp"
#include "hough.hpp"
#include "isovist_field.hpp"
#include "pipeline.hpp"
#include "ridge_detect.hpp"
