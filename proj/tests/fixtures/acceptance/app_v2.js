import { fetchUser } from './api';

export async function loadUser(id) {
  const user = await fetchUser(id);
  if (!user || !user.active) {
    return null;
  }
  return user;
}

export function renderNames(items) {
  items.forEach(function (item) {
  });
  console.log('rendered');
}
