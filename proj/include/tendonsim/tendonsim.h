/*
 * Copyright 2026 The tendonsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the tendon-driven finger simulator.
 *
 * Objects are opaque handles created by tsim_*_create/load functions and
 * released with the matching tsim_*_free. Every fallible call returns a
 * tsim_status; on failure a human-readable message is available from
 * tsim_last_error() on the calling thread until the next API call.
 * Strings returned through char** are heap allocated and must be released
 * with tsim_string_free. All quantities are SI unless a name says otherwise.
 */

#ifndef TENDONSIM_TENDONSIM_H_
#define TENDONSIM_TENDONSIM_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TENDONSIM_BUILDING)
#    define TSIM_API __declspec(dllexport)
#  else
#    define TSIM_API __declspec(dllimport)
#  endif
#else
#  define TSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsim_status {
  TSIM_OK = 0,
  TSIM_ERR_INVALID_ARGUMENT = 1,
  TSIM_ERR_CONFIG = 2,
  TSIM_ERR_IO = 3,
  TSIM_ERR_RANGE_EXCEEDED = 4,
  TSIM_ERR_GEOMETRY_INFEASIBLE = 5,
  TSIM_ERR_TENSION_INFEASIBLE = 6,
  TSIM_ERR_NO_CONVERGENCE = 7,
  TSIM_ERR_RESOLUTION_TOO_LOW = 8,
  TSIM_ERR_EMPTY_CLOUD = 9,
  TSIM_ERR_BOUNDARY_MINIMUM = 10,
  TSIM_ERR_INTERNAL = 99
} tsim_status;

typedef enum tsim_statics_model {
  TSIM_MODEL_LITERAL = 0,
  TSIM_MODEL_VIRTUAL_WORK = 1
} tsim_statics_model;

typedef enum tsim_group { TSIM_GROUP_FLEXION = 0, TSIM_GROUP_EXTENSION = 1 } tsim_group;

typedef struct tsim_finger tsim_finger;
typedef struct tsim_solution tsim_solution;
typedef struct tsim_sweep tsim_sweep;
typedef struct tsim_workspace tsim_workspace;

TSIM_API const char* tsim_status_name(tsim_status status);
TSIM_API const char* tsim_last_error(void);
TSIM_API void tsim_string_free(char* s);

/* ---- Finger definition ------------------------------------------------ */

typedef struct tsim_solver_options {
  double threshold;   /* fixed-point stop: |y_k - y_k-1| <= threshold [m] */
  int max_iterations;
  tsim_statics_model model;
} tsim_solver_options;

/* Library defaults: threshold 1e-6 m, 100 iterations, literal model. */
TSIM_API void tsim_solver_options_init(tsim_solver_options* options);

/* Loads a JSON config document; relative tendon documents resolve against
 * the file's directory. */
TSIM_API tsim_status tsim_finger_load(const char* path, tsim_finger** out);
TSIM_API tsim_status tsim_finger_parse(const char* json_text, const char* base_dir,
                                       tsim_finger** out);
TSIM_API void tsim_finger_free(tsim_finger* finger);

/* Solver options from the document's optional "solver" block. */
TSIM_API tsim_status tsim_finger_solver_options(const tsim_finger* finger,
                                                tsim_solver_options* out);
TSIM_API tsim_status tsim_finger_total_length(const tsim_finger* finger, double* out);
TSIM_API tsim_status tsim_finger_guide_radii(const tsim_finger* finger, double out[3]);
/* Sets Young's modulus of all six tendons. */
TSIM_API tsim_status tsim_finger_set_youngs_modulus(tsim_finger* finger, double pascals);

/* ---- Kinematics -------------------------------------------------------- */

typedef struct tsim_kinematics {
  double q;
  double theta[3];
  double joints[4][2]; /* joints 1..3 then fingertip */
  double tip[2];
  double jacobian[2];  /* d(x, y)/dq */
} tsim_kinematics;

TSIM_API tsim_status tsim_kinematics_at(const tsim_finger* finger, double q,
                                        tsim_kinematics* out);

/* ---- Statics ----------------------------------------------------------- */

typedef struct tsim_load {
  double force[2];  /* [N] */
  double moment;    /* [N m] */
  int has_point;    /* 0: fingertip; 1: `point` (base frame at the nominal pose) */
  double point[2];
} tsim_load;

typedef struct tsim_solution_info {
  int converged;
  int iterations;
  double residual;
  double theta[3];
  double nominal_theta[3];
  double tensions[3];
  tsim_group active_group;
  double tip[2];
  double deflection_y;
  double elongated_lengths[3];
} tsim_solution_info;

/* On TSIM_ERR_NO_CONVERGENCE *out still receives the partial solution with
 * its iteration trace; on other errors *out is NULL. */
TSIM_API tsim_status tsim_solve_static(const tsim_finger* finger, double q,
                                       const tsim_load* load,
                                       const tsim_solver_options* options,
                                       tsim_solution** out);
TSIM_API tsim_status tsim_solution_info_get(const tsim_solution* solution,
                                            tsim_solution_info* out);
TSIM_API tsim_status tsim_solution_json(const tsim_solution* solution, char** out);
TSIM_API void tsim_solution_free(tsim_solution* solution);

/* ---- Stiffness sweep / validation ------------------------------------- */

typedef struct tsim_sweep_row {
  double payload_kg;
  double deflection_m;    /* downward fingertip sag */
  double stiffness;       /* [N/m], NaN when undefined */
  int iterations;
  tsim_status status;
} tsim_sweep_row;

typedef struct tsim_reference_summary {
  int matched;
  double max_error_mm;
  double mean_error_mm;
  double max_error_pct;
  double mean_error_pct;
} tsim_reference_summary;

TSIM_API tsim_status tsim_stiffness_sweep(const tsim_finger* finger, double q,
                                          const double* payloads_kg, size_t count,
                                          const tsim_solver_options* options,
                                          tsim_sweep** out);
TSIM_API size_t tsim_sweep_size(const tsim_sweep* sweep);
TSIM_API tsim_status tsim_sweep_row_get(const tsim_sweep* sweep, size_t index,
                                        tsim_sweep_row* out);
TSIM_API tsim_status tsim_sweep_csv(const tsim_sweep* sweep, char** out);
/* Attaches a reference CSV (payload_kg, deflection_mm columns). Later calls
 * to tsim_validation_csv / _summary include the comparison. */
TSIM_API tsim_status tsim_sweep_load_reference(tsim_sweep* sweep, const char* csv_path,
                                               tsim_reference_summary* summary);
TSIM_API tsim_status tsim_validation_csv(const tsim_sweep* sweep, char** out);
TSIM_API tsim_status tsim_validation_summary(const tsim_sweep* sweep, char** out);
TSIM_API void tsim_sweep_free(tsim_sweep* sweep);

/* ---- Workspace --------------------------------------------------------- */

typedef struct tsim_occupancy_info {
  double cell_size;
  double origin[2];
  int width;
  int height;
  double link_area[3];  /* [m^2] */
  double union_area;
  double overlap_link1_link2;
} tsim_occupancy_info;

TSIM_API tsim_status tsim_workspace_sweep(const tsim_finger* finger, int resolution,
                                          tsim_workspace** out);
/* link is 1..3 */
TSIM_API size_t tsim_workspace_point_count(const tsim_workspace* ws, int link);
TSIM_API tsim_status tsim_workspace_csv(const tsim_workspace* ws, char** out);
/* pgm_out and sidecar_out may be NULL. */
TSIM_API tsim_status tsim_workspace_occupancy(const tsim_workspace* ws, double cell_size,
                                              tsim_occupancy_info* info, char** pgm_out,
                                              char** sidecar_out);
TSIM_API void tsim_workspace_free(tsim_workspace* ws);

/* ---- Energy oracle ----------------------------------------------------- */

/* Solves the same load with the fixed point and with the energy oracle and
 * writes a JSON report. *agree is 1 when the fingertips are within
 * tolerance_fraction of the finger length. */
TSIM_API tsim_status tsim_oracle_check(const tsim_finger* finger, double q,
                                       const tsim_load* load,
                                       const tsim_solver_options* options, int grid,
                                       int refine_rounds, double tolerance_fraction,
                                       char** report_json, int* agree);

#ifdef __cplusplus
}
#endif

#endif /* TENDONSIM_TENDONSIM_H_ */
