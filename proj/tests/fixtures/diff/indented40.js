function summarize(orders, options) {
  const totals = {};
  let count = 0;
  for (const order of orders) {
    if (!order || order.cancelled) {
      continue;
    }
    const key = options.groupBy ? order[options.groupBy] : 'all';
    if (!(key in totals)) {
      totals[key] = { amount: 0, items: 0 };
    }
    totals[key].amount += order.amount;
    totals[key].items += order.items.length;
    count += 1;
  }
  const keys = Object.keys(totals).sort();
  const rows = [];
  for (const key of keys) {
    const entry = totals[key];
    const average = entry.items > 0 ? entry.amount / entry.items : 0;
    rows.push({
      key,
      amount: entry.amount,
      items: entry.items,
      average: Math.round(average * 100) / 100,
    });
  }
  if (options.limit && rows.length > options.limit) {
    rows.length = options.limit;
  }
  switch (options.format) {
    case 'csv':
      return rows.map((r) => [r.key, r.amount, r.items].join(',')).join('\n');
    case 'json':
      return JSON.stringify(rows);
    default:
      break;
  }
  return { count, rows };
}
