#ifndef NPBPARAMS_H
#define NPBPARAMS_H
#define CLASS 'S'
#define NA 1400
#define NONZER 7
#define NITER 15
#define SHIFT 10.0
#define M 24
#define MK 16
#define NK (1 << MK)
#define NQ 10
#define TOTAL_KEYS (1 << 16)
#define MAX_KEY (1 << 11)
#define NUM_BUCKETS (1 << 10)
#define NX 32
#define NY 32
#define NZ 32
#endif
