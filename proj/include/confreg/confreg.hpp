// Umbrella header.
#pragma once

#include "confreg/boundary.hpp"
#include "confreg/brent.hpp"
#include "confreg/dataset.hpp"
#include "confreg/errors.hpp"
#include "confreg/geometry.hpp"
#include "confreg/grid.hpp"
#include "confreg/io.hpp"
#include "confreg/likelihood.hpp"
#include "confreg/model.hpp"
#include "confreg/models.hpp"
#include "confreg/nelder_mead.hpp"
#include "confreg/radial.hpp"
#include "confreg/special_functions.hpp"
#include "confreg/svg.hpp"
