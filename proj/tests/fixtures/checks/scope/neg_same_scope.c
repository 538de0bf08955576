// expect: global=0 scope=0 pure=0 scoping=0 default=0 multi=0 simd=0
__attribute__((const)) int twice(int x) {
    int y = x * 2;
    return y;
}
