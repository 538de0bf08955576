// expect: global=1 scope=0 pure=1 scoping=0 default=0 multi=0 simd=0
int base = 3;

int offset(int x) { return x + base; }
