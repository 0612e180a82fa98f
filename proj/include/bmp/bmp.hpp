#pragma once

#include "bmp/aux_graph.hpp"
#include "bmp/graph.hpp"
#include "bmp/oct.hpp"
#include "bmp/pipeline.hpp"
#include "bmp/repair.hpp"
#include "bmp/timetable.hpp"
