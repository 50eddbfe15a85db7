import { fetchUser } from './api';

export async function loadUser(id) {
  console.log('loading user', id);
  const user = await fetchUser(id);
  if (!user || !user.active) {
    return null;
  }
  return user;
}

export function renderNames(items) {
  items.forEach(function (item) {
    console.log(item.name);
  });
  console.log('rendered');
}
