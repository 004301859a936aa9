// Regenerates the .bin / .bin-runtime / .abi / .solc-gas.json artifacts from
// the Solidity sources in this directory with solc-js 0.4.26:
//   npm install solc@0.4.26 && node build_corpus.js
const fs = require('fs');
const path = require('path');
const solc = require('solc');

const sources = fs.readdirSync(__dirname).filter((f) => f.endsWith('.sol'));
const input = {
  language: 'Solidity',
  sources: {},
  settings: {
    evmVersion: 'byzantium',
    optimizer: { enabled: false },
    outputSelection: {
      '*': { '*': ['abi', 'evm.bytecode.object', 'evm.deployedBytecode.object', 'evm.gasEstimates'] },
    },
  },
};
for (const f of sources) {
  input.sources[f] = { content: fs.readFileSync(path.join(__dirname, f), 'utf8') };
}
const out = JSON.parse((solc.compileStandardWrapper || solc.compile)(JSON.stringify(input)));
for (const e of out.errors || []) {
  if (e.severity === 'error') {
    console.error(e.formattedMessage);
    process.exit(1);
  }
}
for (const f of sources) {
  const want = path.basename(f, '.sol');
  const c = out.contracts[f][want];
  if (!c) continue;
  fs.writeFileSync(path.join(__dirname, `${want}.bin`), c.evm.bytecode.object + '\n');
  fs.writeFileSync(path.join(__dirname, `${want}.bin-runtime`), c.evm.deployedBytecode.object + '\n');
  fs.writeFileSync(path.join(__dirname, `${want}.abi`), JSON.stringify(c.abi) + '\n');
  fs.writeFileSync(path.join(__dirname, `${want}.solc-gas.json`), JSON.stringify(c.evm.gasEstimates, null, 2) + '\n');
  console.log(`${want}: ${c.evm.bytecode.object.length / 2} bytes init, ${c.evm.deployedBytecode.object.length / 2} bytes runtime`);
}
