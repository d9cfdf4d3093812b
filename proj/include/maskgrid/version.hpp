#pragma once

#define MASKGRID_VERSION "0.1.0"
