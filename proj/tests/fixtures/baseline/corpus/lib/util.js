const compose = (...fns) => (x) => fns.reduceRight((v, f) => f(v), x);

function debounce(fn, ms) {
  let timer;
  return function debounced(...args) {
    clearTimeout(timer);
    timer = setTimeout(() => fn.apply(this, args), ms);
  };
}

module.exports.once = function once(fn) {
  let done = false;
  return function () {
    if (done) return;
    done = true;
    return fn.apply(this, arguments);
  };
};

(function iife() {
  [1, 2, 3].filter(function odd(n) { return n % 2; }).forEach(console.log);
})();

exports.sleep = async (ms) => new Promise((r) => setTimeout(r, ms));

function* gen() { yield 1; }
async function* agen() { yield await Promise.resolve(2); }

process.on('exit', function onExit(code) {
  if (code && code > 0) console.log('bad exit');
});

const noop = function () {};
const sorted = [3, 1, 2].sort((a, b) => a - b);
