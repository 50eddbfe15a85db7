function f1(a) {
  console.log('step 1', a);
  var b = a * 1 + 1;
  return b;
}

function f2(a) {
  console.log('step 2', a);
  var b = a * 2 + 1;
  return b;
}

function f3(a) {
  console.log('step 3', a);
  var b = a * 3 + 1;
  return b;
}

function f4(a) {
  console.log('step 4', a);
  var b = a * 4 + 1;
  return b;
}

function f5(a) {
  console.log('step 5', a);
  var b = a * 5 + 1;
  return b;
}

function f6(a) {
  console.log('step 6', a);
  var b = a * 6 + 1;
  return b;
}

function f7(a) {
  console.log('step 7', a);
  var b = a * 7 + 1;
  return b;
}

function f8(a) {
  console.log('step 8', a);
  var b = a * 8 + 1;
  return b;
}

function f9(a) {
  console.log('step 9', a);
  var b = a * 9 + 1;
  return b;
}

function f10(a) {
  console.log('step 10', a);
  var b = a * 10 + 1;
  return b;
}

function f11(a) {
  console.log('step 11', a);
  var b = a * 11 + 1;
  return b;
}

function f12(a) {
  console.log('step 12', a);
  var b = a * 12 + 1;
  return b;
}

function f13(a) {
  console.log('step 13', a);
  var b = a * 13 + 1;
  return b;
}

function f14(a) {
  console.log('step 14', a);
  var b = a * 14 + 1;
  return b;
}

function f15(a) {
  console.log('step 15', a);
  var b = a * 15 + 1;
  return b;
}

function f16(a) {
  console.log('step 16', a);
  var b = a * 16 + 1;
  return b;
}

function f17(a) {
  console.log('step 17', a);
  var b = a * 17 + 1;
  return b;
}

function f18(a) {
  console.log('step 18', a);
  var b = a * 18 + 1;
  return b;
}

function f19(a) {
  console.log('step 19', a);
  var b = a * 19 + 1;
  return b;
}

function f20(a) {
  console.log('step 20', a);
  var b = a * 20 + 1;
  return b;
}

function f21(a) {
  console.log('step 21', a);
  var b = a * 21 + 1;
  return b;
}

function f22(a) {
  console.log('step 22', a);
  var b = a * 22 + 1;
  return b;
}

function f23(a) {
  console.log('step 23', a);
  var b = a * 23 + 1;
  return b;
}

function f24(a) {
  console.log('step 24', a);
  var b = a * 24 + 1;
  return b;
}

function f25(a) {
  console.log('step 25', a);
  var b = a * 25 + 1;
  return b;
}

function f26(a) {
  console.log('step 26', a);
  var b = a * 26 + 1;
  return b;
}

function f27(a) {
  console.log('step 27', a);
  var b = a * 27 + 1;
  return b;
}

function f28(a) {
  console.log('step 28', a);
  var b = a * 28 + 1;
  return b;
}

function f29(a) {
  console.log('step 29', a);
  var b = a * 29 + 1;
  return b;
}

function f30(a) {
  console.log('step 30', a);
  var b = a * 30 + 1;
  return b;
}

function f31(a) {
  console.log('step 31', a);
  var b = a * 31 + 1;
  return b;
}

function f32(a) {
  console.log('step 32', a);
  var b = a * 32 + 1;
  return b;
}

function f33(a) {
  console.log('step 33', a);
  var b = a * 33 + 1;
  return b;
}

function f34(a) {
  console.log('step 34', a);
  var b = a * 34 + 1;
  return b;
}

function f35(a) {
  console.log('step 35', a);
  var b = a * 35 + 1;
  return b;
}

function f36(a) {
  console.log('step 36', a);
  var b = a * 36 + 1;
  return b;
}

function f37(a) {
  console.log('step 37', a);
  var b = a * 37 + 1;
  return b;
}

function f38(a) {
  console.log('step 38', a);
  var b = a * 38 + 1;
  return b;
}

function f39(a) {
  console.log('step 39', a);
  var b = a * 39 + 1;
  return b;
}

function f40(a) {
  console.log('step 40', a);
  var b = a * 40 + 1;
  return b;
}

function f41(a) {
  console.log('step 41', a);
  var b = a * 41 + 1;
  return b;
}

function f42(a) {
  console.log('step 42', a);
  var b = a * 42 + 1;
  return b;
}

function f43(a) {
  console.log('step 43', a);
  var b = a * 43 + 1;
  return b;
}

function f44(a) {
  console.log('step 44', a);
  var b = a * 44 + 1;
  return b;
}

function f45(a) {
  console.log('step 45', a);
  var b = a * 45 + 1;
  return b;
}

function f46(a) {
  console.log('step 46', a);
  var b = a * 46 + 1;
  return b;
}

function f47(a) {
  console.log('step 47', a);
  var b = a * 47 + 1;
  return b;
}

function f48(a) {
  console.log('step 48', a);
  var b = a * 48 + 1;
  return b;
}

function f49(a) {
  console.log('step 49', a);
  var b = a * 49 + 1;
  return b;
}

function f50(a) {
  console.log('step 50', a);
  var b = a * 50 + 1;
  return b;
}

function f51(a) {
  console.log('step 51', a);
  var b = a * 51 + 1;
  return b;
}

function f52(a) {
  console.log('step 52', a);
  var b = a * 52 + 1;
  return b;
}

function f53(a) {
  console.log('step 53', a);
  var b = a * 53 + 1;
  return b;
}

function f54(a) {
  console.log('step 54', a);
  var b = a * 54 + 1;
  return b;
}

function f55(a) {
  console.log('step 55', a);
  var b = a * 55 + 1;
  return b;
}

function f56(a) {
  console.log('step 56', a);
  var b = a * 56 + 1;
  return b;
}

function f57(a) {
  console.log('step 57', a);
  var b = a * 57 + 1;
  return b;
}

function f58(a) {
  console.log('step 58', a);
  var b = a * 58 + 1;
  return b;
}

function f59(a) {
  console.log('step 59', a);
  var b = a * 59 + 1;
  return b;
}

function f60(a) {
  console.log('step 60', a);
  var b = a * 60 + 1;
  return b;
}

function f61(a) {
  console.log('step 61', a);
  var b = a * 61 + 1;
  return b;
}

function f62(a) {
  console.log('step 62', a);
  var b = a * 62 + 1;
  return b;
}

function f63(a) {
  console.log('step 63', a);
  var b = a * 63 + 1;
  return b;
}

function f64(a) {
  console.log('step 64', a);
  var b = a * 64 + 1;
  return b;
}

function f65(a) {
  console.log('step 65', a);
  var b = a * 65 + 1;
  return b;
}

function f66(a) {
  console.log('step 66', a);
  var b = a * 66 + 1;
  return b;
}

function f67(a) {
  console.log('step 67', a);
  var b = a * 67 + 1;
  return b;
}

function f68(a) {
  console.log('step 68', a);
  var b = a * 68 + 1;
  return b;
}

function f69(a) {
  console.log('step 69', a);
  var b = a * 69 + 1;
  return b;
}

function f70(a) {
  console.log('step 70', a);
  var b = a * 70 + 1;
  return b;
}

function f71(a) {
  console.log('step 71', a);
  var b = a * 71 + 1;
  return b;
}

function f72(a) {
  console.log('step 72', a);
  var b = a * 72 + 1;
  return b;
}

function f73(a) {
  console.log('step 73', a);
  var b = a * 73 + 1;
  return b;
}

function f74(a) {
  console.log('step 74', a);
  var b = a * 74 + 1;
  return b;
}

function f75(a) {
  console.log('step 75', a);
  var b = a * 75 + 1;
  return b;
}

function f76(a) {
  console.log('step 76', a);
  var b = a * 76 + 1;
  return b;
}

function f77(a) {
  console.log('step 77', a);
  var b = a * 77 + 1;
  return b;
}

function f78(a) {
  console.log('step 78', a);
  var b = a * 78 + 1;
  return b;
}

function f79(a) {
  console.log('step 79', a);
  var b = a * 79 + 1;
  return b;
}

function f80(a) {
  console.log('step 80', a);
  var b = a * 80 + 1;
  return b;
}
